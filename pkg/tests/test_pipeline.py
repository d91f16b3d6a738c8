from __future__ import annotations

import json

import pytest

from conftest import kronecker, linear_a3
from repdim.errors import DepthExceeded, DynkinQuiver, GenCogenFailure, NotTilting, ProjectiveSummandInTauT, QuiverError
from repdim.fdalg import find_module_isomorphism, projectives_and_injectives
from repdim.pipeline import (
    Certificate,
    Sample,
    approx_sequence,
    build_generator,
    build_instance,
    certify,
    fsigma_degree_check,
    hom_to_translate_check,
    sample_torsion_modules,
)
from repdim.quiverrep import cokernel, direct_sum, euler_form, hom_space, is_isomorphic
from repdim.tilting import TorsionPairView, in_torsion_class


def test_kronecker_instance(kron_instance):
    assert kron_instance.slice_power == 3
    assert kron_instance.depth >= 4
    assert kron_instance.b.dim == 4


def test_affine_instance(affine_instance):
    assert affine_instance.slice_power == 3
    assert affine_instance.b.dim == 10


def test_dynkin_rejected():
    with pytest.raises(DynkinQuiver):
        build_instance(linear_a3(), [("1", 2), ("2", 2), ("3", 2)])


@pytest.mark.parametrize("power", [0, 1])
def test_small_powers_rejected(power):
    with pytest.raises(ProjectiveSummandInTauT):
        build_instance(kronecker(), [("1", power), ("2", 2)])


def test_negative_power_rejected():
    with pytest.raises(QuiverError):
        build_instance(kronecker(), [("1", -1), ("2", 2)])


def test_non_tilting_rejected():
    with pytest.raises(NotTilting):
        build_instance(kronecker(), [("1", 2), ("1", 4)])


def test_depth_too_small():
    with pytest.raises(DepthExceeded):
        build_instance(kronecker(), [("1", 2), ("2", 2)], depth=3)


def test_explicit_slice_power():
    inst = build_instance(kronecker(), [("1", 2), ("2", 2)], slice_power=3)
    assert inst.slice_power == 3


def test_generator_inventory(kron_generator):
    g = kron_generator
    assert g.candidates == 10
    assert len(g.summands) == 8
    assert [s.label for s in g.sigma_prime] == ["tau^-3 P1", "tau^-3 P2"]
    assert [s.label for s in g.q_prime] == ["P1[1]", "P2[1]"]
    assert len(g.g_part) == 4
    # tau^-1 P_v lies in add(tau_C T) and vanishes under Hom_C(T, -)
    assert sorted(g.dropped) == [("tau^-1 P1", "zero"), ("tau^-1 P2", "zero")]
    assert g.dim == 32


def test_generator_is_gen_cogen(kron_instance, kron_generator):
    assert kron_generator.gen_cogen
    projs, injs = projectives_and_injectives(kron_instance.b.algebra)
    for m in projs + injs:
        assert any(find_module_isomorphism(s.module, m) is not None for s in kron_generator.summands)


def test_generator_summands_pairwise_distinct(kron_generator):
    mods = kron_generator.modules
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            assert find_module_isomorphism(mods[i], mods[j]) is None


def test_tampered_generator_raises(kron_instance):
    with pytest.raises(GenCogenFailure):
        build_generator(kron_instance, tamper="drop-injective")


def test_end_dimension_matches_quotient_dims(kron_instance, kron_generator):
    # oracle: dim End_B(M) = sum over pairs of dim Hom_C(X, Y) modulo add(tau_C T)
    b = kron_instance.b
    total = sum(b.quotient_dim(x.obj, y.obj) for x in kron_generator.summands for y in kron_generator.summands)
    assert total == 88


def test_samples_deterministic(kron_instance):
    a = sample_torsion_modules(kron_instance, 8, seed=3)
    b = sample_torsion_modules(kron_instance, 8, seed=3)
    assert [(s.label, s.origin) for s in a] == [(s.label, s.origin) for s in b]
    for x, y in zip(a, b):
        assert is_isomorphic(x.rep, y.rep)


def test_samples_in_torsion_class(kron_instance):
    fam = [kron_instance.component.cell(4, v) for v in kron_instance.quiver.vertices]
    view = TorsionPairView(direct_sum(fam), fam)
    samples = sample_torsion_modules(kron_instance, 10, seed=7)
    assert {s.origin for s in samples} == {"cell", "cokernel"}
    for s in samples:
        assert in_torsion_class(view, s.rep)


def test_regular_cokernel_in_torsion_class(kron_instance, kron_generator):
    # a generic map tau^-4 P2 -> tau^-4 P1 is injective with regular cokernel of dim (1, 1)
    c = kron_instance.component
    src, tgt = c.cell(4, "2"), c.cell(4, "1")
    basis = hom_space(src, tgt).basis
    f = basis[0]
    for k, h in enumerate(basis[1:], start=2):
        f = f + h.scale(k)
    x = cokernel(f).rep
    assert x.dim_vector == (1, 1)
    # defect <(1,1), x> vanishes exactly on regular modules
    assert euler_form(kron_instance.quiver, (1, 1), x.dim_vector) == 0
    a = approx_sequence(kron_instance, kron_generator, Sample("regular", "cokernel", x))
    assert a.passed


def test_doubled_target_cokernel_is_preprojective(kron_instance):
    # mapping into two copies of tau^-4 P1 leaves a cokernel of dim vector tau^-5 P2
    c = kron_instance.component
    assert tuple(2 * a - b for a, b in zip(c.cell(4, "1").dim_vector, c.cell(4, "2").dim_vector)) == c.cell(
        5, "2"
    ).dim_vector


def test_approximation_of_slice_module_is_trivial(kron_instance, kron_generator):
    a = approx_sequence(kron_instance, kron_generator, kron_instance.component.cell(3, "1"))
    assert a.passed and a.dim_k == 0 and a.dim_e == a.dim_y


def test_approximation_almost_split(kron_instance, kron_generator):
    a = approx_sequence(kron_instance, kron_generator, kron_instance.component.cell(4, "2"))
    assert a.passed
    assert (a.dim_k, a.dim_e, a.dim_y) == (5, 14, 9)
    assert a.dim_k - a.dim_e + a.dim_y == 0


def test_hom_checks_on_cells(kron_instance):
    for k in range(4, kron_instance.depth + 1):
        for v in kron_instance.quiver.vertices:
            x = kron_instance.component.cell(k, v)
            assert hom_to_translate_check(kron_instance, x)
            assert fsigma_degree_check(kron_instance, x)


def test_hom_check_fails_before_slice(kron_instance):
    # tau^-2 P1 maps nontrivially to tau of the slice
    assert not hom_to_translate_check(kron_instance, kron_instance.component.cell(2, "1"))


def test_certificate_kronecker(kron_certificate):
    cert, _ = kron_certificate
    assert cert.verdict == "success"
    assert cert.gl_dim == {"value": 3, "exact": True, "text": "Finite(3)"}
    assert cert.dim_m == 32 and cert.dim_end == 88 and cert.dim_b == 4
    assert all(s["passed"] for s in cert.samples) and len(cert.samples) == 20


def test_certificate_round_trip(kron_certificate):
    cert, _ = kron_certificate
    again = Certificate.from_dict(json.loads(json.dumps(cert.to_dict())))
    assert again == cert


def test_certificate_deterministic(kron_instance, kron_certificate):
    a = certify(kron_instance, samples=20, seed=7, bound=10)
    assert a.to_dict() == kron_certificate[0].to_dict()


def test_tampered_certificate_fails(kron_instance):
    cert = certify(kron_instance, samples=2, seed=0, tamper="drop-injective")
    assert cert.verdict == "failure"
    assert cert.first_failure["code"] == "GenCogenFailure"


def test_small_resolution_bound_fails(kron_instance):
    cert = certify(kron_instance, samples=2, seed=0, bound=2)
    assert cert.verdict == "failure"
    assert cert.first_failure["name"] == "global_dimension"
    assert cert.gl_dim["exact"] is False


def test_affine_generator_counts(affine_instance):
    g = build_generator(affine_instance)
    assert g.candidates == 20
    assert len(g.summands) == 16
    assert g.gen_cogen

