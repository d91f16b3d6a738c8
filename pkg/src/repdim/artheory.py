"""Auslander-Reiten translates, the Coxeter matrix and the preprojective component."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import DepthExceeded, InjectiveInput, ProjectiveInput, SliceConditionFailed
from .exactlin import QMatrix, rank
from .quiverrep import (
    Presentation,
    Quiver,
    Rep,
    RepMorphism,
    SubRep,
    _injective_sum,
    _injective_sum_map,
    direct_sum,
    dual_morphism,
    dual_rep,
    ext1_space,
    hom_space,
    kernel,
    lift_to_presentations,
    min_projective_presentation,
)

__all__ = [
    "Presentation",
    "min_projective_presentation",
    "tau",
    "tau_inv",
    "tau_morphism",
    "tau_inv_morphism",
    "cartan_matrix",
    "coxeter_matrix",
    "coxeter_inverse",
    "apply_int_matrix",
    "Cell",
    "KnittedComponent",
    "knit",
    "Slice",
    "slice_at",
    "fsigma_indecs",
]


def _tau_sub(x: Rep) -> SubRep:
    sub = x._cache.get("tau_sub")
    if sub is None:
        nu = min_projective_presentation(x).nakayama()
        sub = kernel(nu)
        x._cache["tau_sub"] = sub
        x._cache["has_proj"] = any(rank(m) < m.rows for m in nu.comps.values())
    return sub


def tau(x: Rep, strict: bool = True) -> Rep:
    """AR translate as the kernel of nu(p) for the minimal presentation p.

    With ``strict=False`` projective summands are silently sent to 0.

    Raises:
        ProjectiveInput: ``strict`` and ``x`` has a projective summand.
    """
    sub = _tau_sub(x)
    if strict and x._cache["has_proj"]:
        raise ProjectiveInput(f"module with dim vector {x.dim_vector} has a projective summand")
    return sub.rep


def tau_inv(x: Rep, strict: bool = True) -> Rep:
    """Inverse AR translate, computed as D tau D over the opposite quiver.

    Raises:
        InjectiveInput: ``strict`` and ``x`` has an injective summand.
    """
    d = dual_rep(x)
    try:
        t = tau(d, strict)
    except ProjectiveInput:
        raise InjectiveInput(f"module with dim vector {x.dim_vector} has an injective summand") from None
    return dual_rep(t)


def tau_morphism(f: RepMorphism, rng=None) -> RepMorphism:
    """tau(f): tau(source) -> tau(target), via lifting to presentations.

    Projective summands of source or target are dropped, so this is the
    functor on the stable category.  ``rng`` randomises the lift; the result
    does not depend on it.
    """
    x, y = f.source, f.target
    sx, sy = _tau_sub(x), _tau_sub(y)
    px, py = min_projective_presentation(x), min_projective_presentation(y)
    _, f1_images = lift_to_presentations(f, rng)
    q = x.quiver
    nu_f1 = _injective_sum_map(
        q,
        px.p1_vertices,
        py.p1_vertices,
        _injective_sum(q, px.p1_vertices),
        _injective_sum(q, py.p1_vertices),
        f1_images,
    )
    comps = {v: nu_f1.comps[v] @ sx.inclusion.comps[v] for v in q.vertices}
    return sy.restrict(RepMorphism(sx.rep, sy.ambient, comps))


def tau_inv_morphism(f: RepMorphism, rng=None) -> RepMorphism:
    """tau^{-1}(f): tau_inv(source) -> tau_inv(target) (injective summands dropped)."""
    g = tau_morphism(dual_morphism(f), rng)
    return RepMorphism(dual_rep(g.target), dual_rep(g.source), {v: m.T for v, m in g.comps.items()})


# ---------------------------------------------------------------------------
# Coxeter transformation


def cartan_matrix(q: Quiver) -> QMatrix:
    """Columns are the dimension vectors of the indecomposable projectives."""
    cols = [list(q.projective(v).dim_vector) for v in q.vertices]
    return QMatrix.from_columns(cols, q.n)


def coxeter_matrix(q: Quiver) -> QMatrix:
    """Phi = -C^T C^{-1}; dim tau X = Phi dim X when X has no projective summands."""
    c = cartan_matrix(q)
    return -(c.T @ c.inverse())


def coxeter_inverse(q: Quiver) -> QMatrix:
    c = cartan_matrix(q)
    return -(c @ c.T.inverse())


def apply_int_matrix(m: QMatrix, vec) -> tuple[int, ...]:
    out = m.apply(list(vec))
    if any(e.q != 1 for e in out):
        raise ArithmeticError("non-integral result")
    return tuple(int(e.p) for e in out)


# ---------------------------------------------------------------------------
# knitting


@dataclass(frozen=True)
class Cell:
    """The module tau^{-power} P_vertex of the preprojective component."""

    power: int
    vertex: str
    rep: Rep = field(compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"tau^-{self.power} P{self.vertex}" if self.power else f"P{self.vertex}"

    @property
    def key(self) -> tuple[int, str]:
        return (self.power, self.vertex)


class KnittedComponent:
    """Cells tau^{-k} P_v for 0 <= k <= depth, built by repeated tau_inv.

    A vertex stops being extended once its cell is injective, which only
    happens for representation-finite quivers.
    """

    def __init__(self, quiver: Quiver, depth: int = 0):
        self.quiver = quiver
        self.depth = 0
        self.cells: dict[tuple[int, str], Rep] = {(0, v): quiver.projective(v) for v in quiver.vertices}
        self.stopped: dict[str, int] = {}
        self.extend(depth)

    def extend(self, depth: int) -> "KnittedComponent":
        for k in range(self.depth + 1, depth + 1):
            for v in self.quiver.vertices:
                if v in self.stopped:
                    continue
                try:
                    self.cells[(k, v)] = tau_inv(self.cells[(k - 1, v)])
                except InjectiveInput:
                    self.stopped[v] = k - 1
            self.depth = k
        return self

    def cell(self, k: int, v) -> Rep:
        v = self.quiver.v(v)
        if (k, v) not in self.cells:
            raise DepthExceeded(f"cell ({k}, {v}) not knitted (depth {self.depth})")
        return self.cells[(k, v)]

    def listing(self) -> list[Cell]:
        return [Cell(k, v, self.cells[(k, v)]) for (k, v) in sorted(self.cells, key=lambda kv: (kv[0], self.quiver.index[kv[1]]))]

    def __len__(self) -> int:
        return len(self.cells)


def knit(q: Quiver, depth: int) -> KnittedComponent:
    return KnittedComponent(q, depth)


@dataclass
class Slice:
    """The complete slice {tau^{-power} P_v : v} together with its direct sum."""

    power: int
    modules: tuple[Rep, ...]
    quiver: Quiver

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @cached_property
    def module(self) -> Rep:
        return direct_sum(self.modules, self.quiver)

    def cells(self) -> list[Cell]:
        return [Cell(self.power, v, m) for v, m in zip(self.quiver.vertices, self.modules)]


def slice_at(c: KnittedComponent, m: int) -> Slice:
    """The slice at power ``m``, validated to be rigid.

    Raises:
        DepthExceeded: ``m`` exceeds the knitted depth.
        SliceConditionFailed: the modules are not pairwise Ext-orthogonal.
    """
    if m < 0 or m > c.depth:
        raise DepthExceeded(f"slice power {m} exceeds knitted depth {c.depth}")
    mods = tuple(c.cell(m, v) for v in c.quiver.vertices)
    for a in mods:
        for b in mods:
            if ext1_space(a, b).dim:
                raise SliceConditionFailed(f"slice at power {m} is not rigid")
    return Slice(m, mods, c.quiver)


def fsigma_indecs(c: KnittedComponent, s: Slice) -> list[Cell]:
    """Cells X of the component with Hom(U, X) = 0 for every slice module U."""
    out = []
    for cell in c.listing():
        if all(hom_space(u, cell.rep).dim == 0 for u in s.modules):
            out.append(cell)
    return out
