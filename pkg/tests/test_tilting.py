from __future__ import annotations

import pytest

from conftest import affine_a3, kronecker
from repdim.artheory import knit, slice_at
from repdim.errors import KernelNotInSlice, NotInTorsionClass, ProjectiveInput
from repdim.exactlin import QMatrix, rank
from repdim.quiverrep import direct_sum, hom_space, is_isomorphic
from repdim.tilting import (
    TorsionPairView,
    find_slice,
    in_free_class,
    in_torsion_class,
    is_tilting,
    right_approximation,
    right_approximation_by_slice,
)


@pytest.fixture(scope="module")
def kc():
    return knit(kronecker(), 6)


def test_path_algebra_is_tilting():
    q = affine_a3()
    ok, report = is_tilting(q, direct_sum([q.projective(v) for v in q.vertices]))
    assert ok and report["ext1_dim"] == 0


def test_translate_of_regular_module_is_tilting(kc):
    q = kc.quiver
    ok, _ = is_tilting(q, direct_sum([kc.cell(2, "1"), kc.cell(2, "2")]))
    assert ok


def test_non_adjacent_pair_not_tilting(kc):
    q = kc.quiver
    ok, report = is_tilting(q, direct_sum([kc.cell(1, "1"), kc.cell(0, "1")]))
    assert not ok
    assert report["ext1_dim"] == 1


def test_repeated_summand_not_tilting(kc):
    q = kc.quiver
    ok, report = is_tilting(q, direct_sum([kc.cell(2, "1"), kc.cell(2, "1")]))
    assert not ok
    assert report["distinct_summands"] == 1


def test_torsion_and_free_classes(kc):
    s = slice_at(kc, 3)
    view = TorsionPairView(s.module, s.modules)
    assert in_torsion_class(view, kc.cell(4, "2"))
    assert in_free_class(view, kc.cell(1, "1"))
    assert not in_torsion_class(view, kc.cell(1, "1"))


def test_find_slice_kronecker(kc):
    t = [kc.cell(2, "1"), kc.cell(2, "2")]
    s = find_slice(kc, direct_sum(t), t)
    assert s.power == 3


def test_find_slice_rejects_projective(kc):
    t = [kc.cell(1, "1"), kc.cell(1, "2")]
    with pytest.raises(ProjectiveInput):
        find_slice(kc, direct_sum(t), t)


def test_approximation_ar_sequence(kc):
    # 0 -> tau^-3 P2 -> (tau^-3 P1)^2 -> tau^-4 P2 -> 0 is almost split
    s = slice_at(kc, 3)
    seq = right_approximation_by_slice(s, kc.cell(4, "2"))
    assert seq.e.dim_vector == (14, 16)
    assert sorted(seq.e_summands) == [0, 0]
    assert seq.k.dim_vector == (6, 7)
    assert seq.k_summands == [1]
    assert seq.k_iso.is_iso()
    assert (seq.f @ seq.iota).is_zero()


def test_approximation_of_slice_module_is_identity(kc):
    s = slice_at(kc, 3)
    seq = right_approximation_by_slice(s, kc.cell(3, "1"))
    assert seq.e_summands == [0]
    assert seq.k.total_dim == 0
    assert seq.f.is_iso()


def test_approximation_is_right_approximation(kc):
    s = slice_at(kc, 3)
    x = kc.cell(5, "1")
    e, idx, f = right_approximation(list(s.modules), x, True)
    for u in s.modules:
        target = hom_space(u, x)
        images = [target.coords(f @ g) for g in hom_space(u, e).basis]
        assert rank(QMatrix.from_rows(images, target.dim)) == target.dim


def test_minimal_is_smaller_than_full(kc):
    s = slice_at(kc, 3)
    x = kc.cell(5, "2")
    e_min, _, _ = right_approximation(list(s.modules), x, True)
    e_all, _, _ = right_approximation(list(s.modules), x, False)
    assert e_min.total_dim <= e_all.total_dim


def test_not_in_torsion_class(kc):
    s = slice_at(kc, 3)
    with pytest.raises(NotInTorsionClass):
        right_approximation_by_slice(s, kc.cell(1, "2"))


def test_kernel_not_in_family(kc):
    # approximating by a single slice module leaves a kernel outside its add
    x = kc.cell(4, "1")
    fam = [kc.cell(3, "1")]
    with pytest.raises(KernelNotInSlice):
        right_approximation_by_slice(fam, x)


def test_kernel_iso_identifies_summands(kc):
    s = slice_at(kc, 3)
    seq = right_approximation_by_slice(s, kc.cell(5, "2"))
    parts = [s.modules[i] for i in seq.k_summands]
    assert is_isomorphic(direct_sum(parts), seq.k)
