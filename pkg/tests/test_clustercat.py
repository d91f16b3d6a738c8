from __future__ import annotations

import itertools
import random

import pytest

from conftest import affine_a3, kronecker, linear_a3
from repdim.artheory import knit, tau_inv
from repdim.clustercat import (
    ClusterMorphism,
    ClusterObject,
    bhom_quotient_check,
    bmodule_of,
    cluster_compose,
    cluster_hom,
    cluster_identity,
    endo_algebra,
    ext1_c,
    is_cluster_tilting_object,
    tau_c,
)
from repdim.fdalg import find_module_isomorphism, global_dimension, primitive_idempotents, projectives_and_injectives
from repdim.quiverrep import euler_form, ext1_space, hom_space


def domain(q, depth):
    c = knit(q, depth)
    mods = [ClusterObject.module(cell.rep, label=cell.label) for cell in c.listing()]
    return c, mods + [ClusterObject.shifted(q, v) for v in q.vertices]


@pytest.fixture(scope="module")
def kron():
    q = kronecker()
    c, objs = domain(q, 5)
    t = [ClusterObject.module(c.cell(2, v), label=f"T{v}") for v in q.vertices]
    return q, c, objs, t


@pytest.fixture(scope="module")
def affine():
    q = affine_a3()
    c, objs = domain(q, 4)
    t = [ClusterObject.module(c.cell(2, v), label=f"T{v}") for v in q.vertices]
    return q, c, objs, t


def test_hom_between_projectives(kron):
    q, c, _, _ = kron
    h = cluster_hom(ClusterObject.module(q.projective("2")), ClusterObject.module(q.projective("1")))
    assert (h.dim0, h.dim1, h.total_dim) == (2, 0, 2)


def test_shifted_to_module_degree_one(kron):
    q, c, _, _ = kron
    y = c.cell(1, "2")
    h = cluster_hom(ClusterObject.shifted(q, "1"), ClusterObject.module(y))
    # Hom(P1, tau^-2 P2) has dimension <P1, tau^-2 P2> since Ext vanishes
    assert h.dim0 == 0
    assert h.dim1 == hom_space(q.projective("1"), tau_inv(y)).dim == euler_form(q, (1, 2), (4, 5))


def test_rigidity_of_tilting_object(kron, affine):
    for _, _, _, t in (kron, affine):
        for a in t:
            for b in t:
                assert cluster_hom(a, tau_c(b)).total_dim == 0


def test_is_cluster_tilting(kron):
    q, c, _, t = kron
    assert is_cluster_tilting_object(t)
    assert not is_cluster_tilting_object([t[0], t[0]])
    assert is_cluster_tilting_object([ClusterObject.module(q.projective(v)) for v in q.vertices])
    assert is_cluster_tilting_object([ClusterObject.shifted(q, v) for v in q.vertices])


def test_tau_c_cases(kron):
    q, c, _, _ = kron
    p = ClusterObject.module(q.projective("1"))
    assert tau_c(p).kind == "shifted" and tau_c(p).vertex == "1"
    s = ClusterObject.shifted(q, "2")
    assert tau_c(s).kind == "module" and tau_c(s).rep.dim_vector == q.injective("2").dim_vector
    x = ClusterObject.module(c.cell(2, "1"))
    assert tau_c(x).rep.dim_vector == c.cell(1, "1").dim_vector


def test_identity_composition(kron):
    _, _, objs, _ = kron
    for x, y in itertools.product(objs[:6] + objs[-2:], repeat=2):
        for f in cluster_hom(x, y).basis():
            assert cluster_compose(cluster_identity(y), f).equals(f)
            assert cluster_compose(f, cluster_identity(x)).equals(f)


def test_degree_two_vanishes(kron):
    _, c, _, _ = kron
    x, y, z = (ClusterObject.module(c.cell(k, "1")) for k in (4, 2, 0))
    fs = [f for f in cluster_hom(x, y).basis() if f.deg0 is None]
    gs = [g for g in cluster_hom(y, z).basis() if g.deg0 is None]
    assert fs and gs
    for f in fs:
        for g in gs:
            assert cluster_compose(g, f).is_zero()


@pytest.mark.parametrize("which", ["kron", "affine"])
def test_associativity(which, request):
    _, _, objs, _ = request.getfixturevalue(which)
    rng = random.Random(5)
    checked = 0
    for _ in range(60):
        x, y, z, w = (rng.choice(objs) for _ in range(4))
        fs = cluster_hom(x, y).basis()
        gs = cluster_hom(y, z).basis()
        hs = cluster_hom(z, w).basis()
        if not (fs and gs and hs):
            continue
        f, g, h = rng.choice(fs), rng.choice(gs), rng.choice(hs)
        lhs = cluster_compose(h, cluster_compose(g, f))
        rhs = cluster_compose(cluster_compose(h, g), f)
        assert lhs.equals(rhs)
        checked += 1
    assert checked >= 10


def test_bilinearity(kron):
    _, _, objs, _ = kron
    rng = random.Random(8)
    checked = 0
    for _ in range(60):
        x, y, z = (rng.choice(objs) for _ in range(3))
        fs, gs = cluster_hom(x, y).basis(), cluster_hom(y, z).basis()
        if len(gs) < 2 or not fs:
            continue
        f = rng.choice(fs)
        g1, g2 = rng.sample(gs, 2)
        lhs = cluster_compose(g1 + g2.scale(3), f)
        rhs = cluster_compose(g1, f) + cluster_compose(g2, f).scale(3)
        assert lhs.equals(rhs)
        checked += 1
    assert checked > 0


def test_composition_independent_of_lift(affine):
    _, _, objs, _ = affine
    rng = random.Random(13)
    checked = 0
    for _ in range(80):
        x, y, z = (rng.choice(objs) for _ in range(3))
        fs, gs = cluster_hom(x, y).basis(), cluster_hom(y, z).basis()
        if not (fs and gs):
            continue
        f, g = rng.choice(fs), rng.choice(gs)
        a = cluster_compose(g, f, random.Random(1))
        b = cluster_compose(g, f, random.Random(2))
        assert a.equals(b)
        checked += 1
    assert checked > 10


@pytest.mark.parametrize("which", ["kron", "affine"])
def test_two_calabi_yau(which, request):
    _, _, objs, _ = request.getfixturevalue(which)
    rng = random.Random(17)
    for _ in range(50):
        x, y = rng.choice(objs), rng.choice(objs)
        assert ext1_c(x, y).total_dim == ext1_c(y, x).total_dim


def test_endo_algebra_kronecker(kron):
    _, _, _, t = kron
    b = endo_algebra(t)
    assert b.dim == 4
    assert len(primitive_idempotents(b.algebra)) == 2
    for i, e in enumerate(b.idempotents):
        for j, f in enumerate(b.idempotents):
            assert b.algebra.mul(e, f) == (e if i == j else [0] * b.dim)
    assert str(global_dimension(b.algebra)) == "Finite(1)"


def test_bmodule_of_parts_are_projective(kron):
    _, _, _, t = kron
    b = endo_algebra(t)
    projs = projectives_and_injectives(b.algebra)[0]
    for i, p in enumerate(t):
        assert find_module_isomorphism(b.module_of(p), projs[i]) is not None


def test_functor_kills_translate_of_t(kron, affine):
    for _, _, _, t in (kron, affine):
        b = endo_algebra(t)
        for p in t:
            assert b.module_of(tau_c(p)).dim == 0


def test_bmodule_dimension_formula(kron):
    # dim Hom_C(T, x) = dim Hom_H(T, x) + dim Ext^1_H(T, tau^-1 x) for a module x
    q, c, _, t = kron
    x = c.cell(3, "2")
    m = bmodule_of(t, ClusterObject.module(x))
    expected = sum(hom_space(p.rep, x).dim + ext1_space(p.rep, tau_inv(x)).dim for p in t)
    assert m.dim == expected


@pytest.mark.parametrize("which", ["kron", "affine"])
def test_hom_quotient_consistency(which, request):
    _, _, objs, t = request.getfixturevalue(which)
    b = endo_algebra(t)
    rng = random.Random(23)
    for _ in range(30):
        x, y = rng.choice(objs), rng.choice(objs)
        direct, quotient = bhom_quotient_check(b, x, y)
        assert direct == quotient


def test_hom_quotient_on_parts(kron):
    _, _, _, t = kron
    for p in t:
        d, qd = bhom_quotient_check(t, p, p)
        assert d == qd == 1
        d, qd = bhom_quotient_check(t, p, tau_c(p))
        assert d == qd == 0


def test_three_cycle_has_infinite_global_dimension():
    # cluster-tilted algebra of type A3 given by an oriented 3-cycle
    q = linear_a3()
    c = knit(q, 4)
    parts = [
        ClusterObject.module(q.projective("1")),
        ClusterObject.module(q.projective("3")),
        ClusterObject.module(c.cell(2, "3")),
    ]
    assert is_cluster_tilting_object(parts)
    b = endo_algebra(parts)
    assert b.dim == 6
    gd = global_dimension(b.algebra, bound=10)
    assert not gd.exact and gd.value == 10


def test_compose_type_mismatch(kron):
    q, c, _, _ = kron
    x = ClusterObject.module(q.projective("1"))
    y = ClusterObject.module(q.projective("2"))
    f = cluster_identity(x)
    g = cluster_identity(y)
    with pytest.raises(TypeError):
        cluster_compose(g, f)


def test_zero_morphism_is_zero(kron):
    _, _, objs, _ = kron
    z = ClusterMorphism(objs[0], objs[1])
    assert z.is_zero()
