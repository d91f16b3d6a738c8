"""Tilting modules, torsion classes, and right approximations by a slice."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .artheory import KnittedComponent, Slice, slice_at, tau
from .errors import DepthExceeded, KernelNotInSlice, NotInTorsionClass, ProjectiveInput
from .exactlin import QMatrix, QuotientSpace, Subspace, kernel_basis, rank
from .quiverrep import (
    Quiver,
    Rep,
    RepMorphism,
    _trace_gram,
    decompose,
    direct_sum,
    ext1_space,
    hom_space,
    kernel,
    morphism_from_blocks,
)

__all__ = [
    "is_tilting",
    "TorsionPairView",
    "in_torsion_class",
    "in_free_class",
    "ApproxSequence",
    "right_approximation_by_slice",
    "right_approximation",
    "find_slice",
]


def is_tilting(q: Quiver, t: Rep) -> tuple[bool, dict]:
    """Rigid with exactly ``q.n`` isomorphism classes of indecomposable summands."""
    ext = ext1_space(t, t).dim
    classes = len(decompose(t))
    report = {"ext1_dim": ext, "distinct_summands": classes, "vertices": q.n}
    return ext == 0 and classes == q.n, report


class TorsionPairView:
    """The torsion pair (F(U), T(U)) of a tilting module U.

    Args:
        generator: the module U.
        summands: its indecomposable summands, if already known.
    """

    def __init__(self, generator: Rep, summands: Sequence[Rep] | None = None):
        self.generator = generator
        self.summands = list(summands) if summands is not None else [s for s, _ in decompose(generator)]


def in_torsion_class(view: TorsionPairView, x: Rep) -> bool:
    """x in T(U), tested as Ext^1(U, x) = 0."""
    return all(ext1_space(u, x).dim == 0 for u in view.summands)


def in_free_class(view: TorsionPairView, x: Rep) -> bool:
    """x in F(U), tested as Hom(U, x) = 0."""
    return all(hom_space(u, x).dim == 0 for u in view.summands)


@dataclass
class ApproxSequence:
    """A short exact sequence 0 -> K -> E -> X -> 0 with E in add(U).

    Attributes:
        e_summands: index into the approximating family for each summand of ``e``.
        k_summands: same for the decomposition of ``k`` (when verified).
        k_iso: isomorphism from ``⊕ U[k_summands]`` onto ``k``.
    """

    x: Rep
    e: Rep
    e_summands: list[int]
    f: RepMorphism
    k: Rep
    iota: RepMorphism
    k_summands: list[int] | None = None
    k_iso: RepMorphism | None = None


def _radical_endo(u: Rep) -> list[RepMorphism]:
    basis = hom_space(u, u).basis
    if not basis:
        return []
    ker = kernel_basis(_trace_gram(basis))
    out = []
    for vec in ker.vectors():
        acc = None
        for c, b in zip(vec, basis):
            if c != 0:
                t = b.scale(c)
                acc = t if acc is None else acc + t
        out.append(acc)
    return out


def right_approximation(family: Sequence[Rep], x: Rep, minimal: bool = True) -> tuple[Rep, list[int], RepMorphism]:
    """Right add(family)-approximation ``f: E -> x``.

    The family must consist of pairwise non-isomorphic indecomposables.  The
    minimal version keeps, for each member, a complement in Hom(U_i, x) of the
    maps factoring through radical maps U_i -> U_j.
    """
    chosen: list[tuple[int, RepMorphism]] = []
    for i, u in enumerate(family):
        h = hom_space(u, x)
        if h.dim == 0:
            continue
        if not minimal:
            chosen.extend((i, b) for b in h.basis)
            continue
        vecs = []
        for j, w in enumerate(family):
            maps_in = _radical_endo(u) if j == i else hom_space(u, w).basis
            if not maps_in:
                continue
            for g in maps_in:
                for hh in hom_space(w, x).basis:
                    vecs.append(h.coords(hh @ g))
        rad = Subspace.spanned_by(QMatrix.from_rows(vecs, h.dim)) if vecs else Subspace.zero(h.dim)
        quo = QuotientSpace(rad)
        for k in range(quo.dim):
            e = [0] * quo.dim
            e[k] = 1
            chosen.append((i, h.element(quo.representative(e))))
    q = x.quiver
    e_summands = [i for i, _ in chosen]
    e = direct_sum([family[i] for i in e_summands], q) if chosen else Rep.zero(q)
    if len(chosen) == 1:
        f = chosen[0][1]
    else:
        f = morphism_from_blocks(e, x, {(0, j): m for j, (_, m) in enumerate(chosen)})
    return e, e_summands, f


def _is_surjective(f: RepMorphism) -> bool:
    return all(rank(m) == m.rows for m in f.comps.values())


def right_approximation_by_slice(
    s: Slice | Sequence[Rep], x: Rep, minimal: bool = True, check_kernel: bool = True
) -> ApproxSequence:
    """0 -> K -> E -> x -> 0 with f: E -> x a right add(slice)-approximation.

    Raises:
        NotInTorsionClass: Ext^1(slice, x) != 0.
        KernelNotInSlice: the kernel is not in add(slice).
    """
    family = list(s.modules) if isinstance(s, Slice) else list(s)
    if not in_torsion_class(TorsionPairView(direct_sum(family), family), x):
        raise NotInTorsionClass(f"module with dim vector {x.dim_vector} is not generated by the slice")
    e, e_summands, f = right_approximation(family, x, minimal)
    if not _is_surjective(f):
        raise NotInTorsionClass(f"approximation of {x.dim_vector} is not surjective")
    ker = kernel(f)
    seq = ApproxSequence(x=x, e=e, e_summands=e_summands, f=f, k=ker.rep, iota=ker.inclusion)
    if check_kernel:
        ek, k_summands, g = right_approximation(family, ker.rep, True)
        if not g.is_iso():
            raise KernelNotInSlice(f"kernel with dim vector {ker.rep.dim_vector} is not in add(slice)")
        seq.k_summands = k_summands
        seq.k_iso = g
    return seq


def find_slice(c: KnittedComponent, t: Rep, summands: Sequence[Rep] | None = None) -> Slice:
    """Least power m >= 1 whose slice U satisfies

    * Ext^1(t, U) = 0,
    * Hom(U, t) = 0 and Hom(U, tau^2 t) = 0.

    Raises:
        ProjectiveInput: t or tau t has a projective summand.
        DepthExceeded: no power up to the knitted depth works.
    """
    parts = list(summands) if summands is not None else [t]
    try:
        tt = [tau(tau(p)) for p in parts]
    except ProjectiveInput as exc:
        raise ProjectiveInput(f"t or tau t has a projective summand ({exc.message})") from None
    for m in range(1, c.depth + 1):
        mods = [c.cell(m, v) for v in c.quiver.vertices]
        if any(ext1_space(p, u).dim for p in parts for u in mods):
            continue
        if any(hom_space(u, p).dim for u in mods for p in parts + tt):
            continue
        return slice_at(c, m)
    raise DepthExceeded(f"no slice up to depth {c.depth}")
