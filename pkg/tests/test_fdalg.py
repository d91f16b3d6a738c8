from __future__ import annotations

import pytest

from repdim.errors import NotSplit
from repdim.exactlin import QMatrix, rank
from repdim.fdalg import (
    FDAlgebra,
    direct_sum_modules,
    endomorphism_algebra,
    find_module_isomorphism,
    global_dimension,
    is_module_map,
    min_resolution,
    module_hom,
    primitive_idempotents,
    projective_cover,
    projectives_and_injectives,
    radical,
    simple_modules,
)


def kronecker_algebra(hint=True, order=(0, 1)):
    # basis e1, e2, a, b with a = e1 a e2 and b = e1 b e2
    table = {
        (0, 0): {0: 1},
        (1, 1): {1: 1},
        (0, 2): {2: 1},
        (0, 3): {3: 1},
        (2, 1): {2: 1},
        (3, 1): {3: 1},
    }
    idems = [[1, 0, 0, 0], [0, 1, 0, 0]]
    return FDAlgebra(4, table, [1, 1, 0, 0], idempotents=[idems[i] for i in order] if hint else None)


def a3_algebra(zero_relation: bool):
    # basis e1, e2, e3, a: 1->2, b: 2->3 and (without the relation) ab
    table = {
        (0, 0): {0: 1},
        (1, 1): {1: 1},
        (2, 2): {2: 1},
        (0, 3): {3: 1},
        (3, 1): {3: 1},
        (1, 4): {4: 1},
        (4, 2): {4: 1},
    }
    dim = 5
    if not zero_relation:
        dim = 6
        table.update({(3, 4): {5: 1}, (0, 5): {5: 1}, (5, 2): {5: 1}})
    one = [1, 1, 1] + [0] * (dim - 3)
    return FDAlgebra(dim, table, one)


def semisimple():
    return FDAlgebra(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 1])


def gaussian_rationals():
    # Q(i) with basis 1, i
    return FDAlgebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: -1}}, [1, 0])


def test_semisimple_radical_zero():
    assert radical(semisimple()).dim == 0


def test_kronecker_radical_is_arrows():
    rad = radical(kronecker_algebra())
    assert rad.dim == 2
    assert sorted(map(tuple, rad.vectors())) == [(0, 0, 0, 1), (0, 0, 1, 0)]


def test_radical_nilpotent():
    a = a3_algebra(False)
    assert a.radical_power(a.dim).dim == 0


def test_idempotents_semisimple():
    es = primitive_idempotents(semisimple())
    assert sorted(map(tuple, es)) == [(0, 1), (1, 0)]


def test_idempotents_kronecker_without_hint():
    a = kronecker_algebra(hint=False)
    es = primitive_idempotents(a)
    assert sorted(map(tuple, es)) == [(0, 1, 0, 0), (1, 0, 0, 0)]


@pytest.mark.parametrize("make", [kronecker_algebra, lambda: a3_algebra(True), lambda: a3_algebra(False)])
def test_idempotents_complete_orthogonal(make):
    a = make()
    es = primitive_idempotents(a)
    total = [0] * a.dim
    for e in es:
        total = a.add(total, e)
    assert total == list(a.identity)
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            prod = a.mul(e, f)
            assert prod == (e if i == j else [0] * a.dim)


def test_not_split():
    with pytest.raises(NotSplit):
        primitive_idempotents(gaussian_rationals())


def test_projectives_and_injectives_kronecker():
    a = kronecker_algebra()
    projs, injs = projectives_and_injectives(a)
    assert [p.dim for p in projs] == [3, 1]
    assert [i.dim for i in injs] == [1, 3]
    assert sum(p.dim for p in projs) == a.dim
    for m in projs + injs:
        assert m.validate()


def test_semisimple_projectives_are_simple():
    projs, injs = projectives_and_injectives(semisimple())
    assert [p.dim for p in projs] == [1, 1]
    assert [i.dim for i in injs] == [1, 1]


def test_peirce_consistency():
    for a in (kronecker_algebra(), a3_algebra(True), a3_algebra(False)):
        es = primitive_idempotents(a)
        total = 0
        for e in es:
            for f in es:
                rows = [a.mul(a.mul(e, a.basis_vector(k)), f) for k in range(a.dim)]
                total += rank(QMatrix.from_rows(rows, a.dim))
        assert total == a.dim


def test_module_hom_identity_and_simples():
    a = kronecker_algebra()
    s = simple_modules(a)
    ends = module_hom(s[0], s[0])
    assert len(ends) == 1
    assert len(module_hom(s[0], s[1])) == 0
    p = projectives_and_injectives(a)[0][0]
    assert any(rank(f) == p.dim for f in module_hom(p, p))


def test_module_hom_yoneda():
    a = a3_algebra(False)
    projs, injs = projectives_and_injectives(a)
    for m in injs + simple_modules(a):
        for i, p in enumerate(projs):
            e = m.idempotent_actions()[i]
            assert len(module_hom(p, m)) == rank(e)


def test_module_maps_are_intertwiners():
    a = a3_algebra(True)
    projs, injs = projectives_and_injectives(a)
    for p in projs:
        for i in injs:
            for f in module_hom(p, i):
                assert is_module_map(p, i, f)


def test_projective_cover_of_projective_is_iso():
    a = a3_algebra(True)
    p = projectives_and_injectives(a)[0][0]
    cov = projective_cover(p)
    assert cov.projective.dim == p.dim
    assert rank(cov.map) == p.dim


def test_projective_cover_of_simple():
    a = kronecker_algebra()
    for i, s in enumerate(simple_modules(a)):
        cov = projective_cover(s)
        assert cov.vertices == [i]
        assert rank(cov.map) == 1


def test_resolutions_kronecker():
    a = kronecker_algebra()
    for s in simple_modules(a):
        tr = min_resolution(s, 10)
        assert tr.terminated and tr.length <= 1
        assert tr.validate()
    p = projectives_and_injectives(a)[0][0]
    assert min_resolution(p, 10).length == 0


def test_global_dimensions():
    assert str(global_dimension(semisimple())) == "Finite(0)"
    assert str(global_dimension(kronecker_algebra())) == "Finite(1)"
    assert str(global_dimension(a3_algebra(False))) == "Finite(1)"
    assert str(global_dimension(a3_algebra(True))) == "Finite(2)"


def test_global_dimension_bound_reached():
    gd = global_dimension(a3_algebra(True), bound=1)
    assert not gd.exact and gd.value == 1
    assert str(gd) == "AtLeast(1)"


def test_global_dimension_independent_of_idempotent_order():
    a = global_dimension(kronecker_algebra(order=(1, 0)))
    b = global_dimension(kronecker_algebra())
    assert (a.value, a.exact) == (b.value, b.exact)
    assert sorted(a.projective_dimensions) == sorted(b.projective_dimensions)


def test_endomorphism_algebra_of_projectives():
    # End(A_A) recovers an algebra of the same dimension and global dimension
    a = a3_algebra(True)
    projs = projectives_and_injectives(a)[0]
    end = endomorphism_algebra(projs)
    assert end.algebra.dim == a.dim
    assert global_dimension(end.algebra) == global_dimension(a)


def test_find_module_isomorphism():
    a = kronecker_algebra()
    projs, injs = projectives_and_injectives(a)
    s = simple_modules(a)
    assert find_module_isomorphism(projs[1], s[1]) is not None
    assert find_module_isomorphism(injs[0], s[0]) is not None
    assert find_module_isomorphism(projs[0], injs[1]) is None


def test_direct_sum_modules_validate():
    a = a3_algebra(True)
    m = direct_sum_modules(projectives_and_injectives(a)[1])
    assert m.validate()
    assert m.dim == sum(i.dim for i in projectives_and_injectives(a)[1])
