"""The cluster category on its fundamental domain ind H ∪ H[1].

Morphisms X -> Y have a degree-0 part in Hom_D(X, Y) and a degree-1 part in
Hom_D(X, F Y) with F = tau^{-1}[1].  Concretely:

=================  =======================  =========================
source, target     degree 0                 degree 1
=================  =======================  =========================
X, Y modules       Hom(X, Y)                Ext^1(X, tau^{-1} Y)
X, P_w[1]          Ext^1(X, P_w)            0
P_v[1], Y          0                        Hom(P_v, tau^{-1} Y)
P_v[1], P_w[1]     Hom(P_v, P_w)            0
=================  =======================  =========================

Here tau^{-1} drops injective summands.  Degree-2 composites vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import flint

from .artheory import tau, tau_inv, tau_inv_morphism
from .errors import ProjectiveInput
from .exactlin import QMatrix, Subspace
from .fdalg import FDAlgebra, FDModule, module_hom
from .quiverrep import (
    Quiver,
    Rep,
    ext1_space,
    find_isomorphism,
    has_projective_summand,
    hom_space,
    is_isomorphic,
    split_summands,
)

__all__ = [
    "ClusterObject",
    "ClusterMorphism",
    "GradedHomSpace",
    "ClusterTiltedAlgebra",
    "cluster_hom",
    "cluster_compose",
    "cluster_identity",
    "tau_c",
    "ext1_c",
    "is_cluster_tilting_object",
    "endo_algebra",
    "bmodule_of",
    "bmodule_map",
    "bhom_quotient_check",
]

_CACHE = 50000


class ClusterObject:
    """An object of the fundamental domain: a module or a shifted projective P_v[1]."""

    __slots__ = ("kind", "quiver", "rep", "vertex", "label", "_cache")

    def __init__(self, kind: str, quiver: Quiver, rep: Rep | None = None, vertex: str | None = None, label: str = ""):
        if kind not in ("module", "shifted"):
            raise ValueError(kind)
        self.kind = kind
        self.quiver = quiver
        self.rep = rep
        self.vertex = vertex
        self.label = label or (f"P{vertex}[1]" if kind == "shifted" else f"M{rep.dim_vector}")
        self._cache: dict = {}

    @classmethod
    def module(cls, rep: Rep, label: str = "") -> "ClusterObject":
        return cls("module", rep.quiver, rep=rep, label=label)

    @classmethod
    def shifted(cls, quiver: Quiver, v, label: str = "") -> "ClusterObject":
        return cls("shifted", quiver, vertex=quiver.v(v), label=label)

    @property
    def is_module(self) -> bool:
        return self.kind == "module"

    @property
    def base(self) -> Rep:
        """The module itself, or P_v for a shifted projective."""
        return self.rep if self.kind == "module" else self.quiver.projective(self.vertex)

    def __repr__(self) -> str:
        return f"ClusterObject({self.label})"


def _tinv(y: Rep) -> Rep:
    return tau_inv(y, strict=False)


class ClusterMorphism:
    """A morphism with degree-0 and degree-1 parts (``None`` means zero)."""

    __slots__ = ("source", "target", "deg0", "deg1")

    def __init__(self, source: ClusterObject, target: ClusterObject, deg0=None, deg1=None):
        self.source = source
        self.target = target
        self.deg0 = deg0
        self.deg1 = deg1

    @property
    def space(self) -> "GradedHomSpace":
        return cluster_hom(self.source, self.target)

    def coords(self) -> list:
        return self.space.coords(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords())

    def __add__(self, other: "ClusterMorphism") -> "ClusterMorphism":
        return ClusterMorphism(self.source, self.target, _add(self.deg0, other.deg0), _add(self.deg1, other.deg1))

    def scale(self, c) -> "ClusterMorphism":
        return ClusterMorphism(
            self.source,
            self.target,
            None if self.deg0 is None else self.deg0.scale(c),
            None if self.deg1 is None else self.deg1.scale(c),
        )

    def equals(self, other: "ClusterMorphism") -> bool:
        return self.coords() == other.coords()

    def __repr__(self) -> str:
        return f"ClusterMorphism({self.source.label} -> {self.target.label})"


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


class GradedHomSpace:
    """Hom_C(x, y) = (degree 0) ⊕ (degree 1), each a HomSpace or Ext1Space."""

    def __init__(self, x: ClusterObject, y: ClusterObject):
        self.source = x
        self.target = y
        self.case = ("M" if x.is_module else "S") + ("M" if y.is_module else "S")
        q = x.quiver
        if self.case == "MM":
            self.deg0 = hom_space(x.rep, y.rep)
            self.deg1 = ext1_space(x.rep, _tinv(y.rep))
        elif self.case == "MS":
            self.deg0 = ext1_space(x.rep, q.projective(y.vertex))
            self.deg1 = None
        elif self.case == "SM":
            self.deg0 = None
            self.deg1 = hom_space(q.projective(x.vertex), _tinv(y.rep))
        else:
            self.deg0 = hom_space(q.projective(x.vertex), q.projective(y.vertex))
            self.deg1 = None

    @property
    def dim0(self) -> int:
        return self.deg0.dim if self.deg0 is not None else 0

    @property
    def dim1(self) -> int:
        return self.deg1.dim if self.deg1 is not None else 0

    @property
    def total_dim(self) -> int:
        return self.dim0 + self.dim1

    @property
    def deg0_basis(self) -> list:
        return list(self.deg0.basis) if self.deg0 is not None else []

    @property
    def deg1_basis(self) -> list:
        return list(self.deg1.basis) if self.deg1 is not None else []

    def basis(self) -> list[ClusterMorphism]:
        if not hasattr(self, "_basis"):
            self._basis = [ClusterMorphism(self.source, self.target, b, None) for b in self.deg0_basis] + [
                ClusterMorphism(self.source, self.target, None, b) for b in self.deg1_basis
            ]
        return self._basis

    def coords(self, m: ClusterMorphism) -> list:
        out = []
        if self.deg0 is not None:
            out.extend(self.deg0.coords(m.deg0) if m.deg0 is not None else [flint.fmpq(0)] * self.dim0)
        if self.deg1 is not None:
            out.extend(self.deg1.coords(m.deg1) if m.deg1 is not None else [flint.fmpq(0)] * self.dim1)
        return out

    def element(self, coords: Sequence) -> ClusterMorphism:
        d0 = self.dim0
        deg0 = self.deg0.element(coords[:d0]) if self.deg0 is not None and d0 else None
        deg1 = self.deg1.element(coords[d0:]) if self.deg1 is not None and self.dim1 else None
        return ClusterMorphism(self.source, self.target, deg0, deg1)

    def zero(self) -> ClusterMorphism:
        return ClusterMorphism(self.source, self.target)


@lru_cache(maxsize=_CACHE)
def cluster_hom(x: ClusterObject, y: ClusterObject) -> GradedHomSpace:
    return GradedHomSpace(x, y)


def cluster_identity(x: ClusterObject) -> ClusterMorphism:
    return ClusterMorphism(x, x, x.base.identity(), None)


def cluster_compose(g: ClusterMorphism, f: ClusterMorphism, rng=None) -> ClusterMorphism:
    """g ∘ f.  ``rng`` randomises the lifts used for Ext pullbacks and tau^{-1}."""
    if f.target is not g.source:
        raise TypeError("cluster morphisms are not composable")
    kinds = "".join("M" if o.is_module else "S" for o in (f.source, f.target, g.target))
    f0, f1, g0, g1 = f.deg0, f.deg1, g.deg0, g.deg1
    deg0 = None
    if f0 is not None and g0 is not None:
        if kinds in ("MMM", "SSS"):
            deg0 = g0 @ f0
        elif kinds == "MMS":
            deg0 = g0.pullback(f0, rng)
        elif kinds == "MSS":
            deg0 = f0.pushforward(g0)
    terms = []
    if f0 is not None and g1 is not None:
        if kinds == "MMM":
            terms.append(g1.pullback(f0, rng))
        elif kinds == "MSM":
            terms.append(f0.pushforward(g1))
        elif kinds == "SSM":
            terms.append(g1 @ f0)
    if f1 is not None and g0 is not None:
        if kinds == "MMM":
            terms.append(f1.pushforward(tau_inv_morphism(g0, rng)))
        elif kinds == "SMM":
            terms.append(tau_inv_morphism(g0, rng) @ f1)
    deg1 = None
    for t in terms:
        deg1 = _add(deg1, t)
    return ClusterMorphism(f.source, g.target, deg0, deg1)


# ---------------------------------------------------------------------------
# the translate in C and cluster-tilting objects


def _projective_vertex(rep: Rep) -> str | None:
    q = rep.quiver
    for v in q.vertices:
        p = q.projective(v)
        if p.dim_vector == rep.dim_vector and find_isomorphism(rep, p) is not None:
            return v
    return None


def tau_c(x: ClusterObject) -> ClusterObject:
    """tau in C: Y -> tau Y, P_v -> P_v[1], P_v[1] -> I_v (for indecomposable x)."""
    t = x._cache.get("tau_c")
    if t is not None:
        return t
    if x.kind == "shifted":
        t = ClusterObject.module(x.quiver.injective(x.vertex), label=f"I{x.vertex}")
    elif has_projective_summand(x.rep):
        v = _projective_vertex(x.rep)
        if v is None:
            raise ProjectiveInput("decomposable module with a projective summand")
        t = ClusterObject.shifted(x.quiver, v)
    else:
        t = ClusterObject.module(tau(x.rep), label=f"tau {x.label}")
    x._cache["tau_c"] = t
    return t


def ext1_c(x: ClusterObject, y: ClusterObject) -> GradedHomSpace:
    """Ext^1_C(x, y) = Hom_C(x, tau_C y)."""
    return cluster_hom(x, tau_c(y))


def cluster_isomorphic(x: ClusterObject, y: ClusterObject) -> bool:
    if x.kind != y.kind:
        return False
    if x.kind == "shifted":
        return x.vertex == y.vertex
    return is_isomorphic(x.rep, y.rep)


def is_cluster_tilting_object(parts: Sequence[ClusterObject]) -> bool:
    """Basic, with n summands, and Ext^1_C-rigid."""
    parts = list(parts)
    if not parts:
        return False
    n = parts[0].quiver.n
    if len(parts) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if cluster_isomorphic(parts[i], parts[j]):
                return False
    for p in parts:
        if p.is_module and len(split_summands(p.rep)) != 1:
            return False
    return all(ext1_c(a, b).total_dim == 0 for a in parts for b in parts)


# ---------------------------------------------------------------------------
# B = End_C(T) and the functor Hom_C(T, -)


class ClusterTiltedAlgebra:
    """B = End_C(T) for a cluster-tilting object T = ⊕ parts.

    The basis of B is the union of bases of Hom_C(T_i, T_j); the product is
    composition, ``b * b' = b ∘ b'``.  B-modules are right modules via
    precomposition.
    """

    def __init__(self, parts: Sequence[ClusterObject], check: bool = True):
        self.parts = list(parts)
        n = len(self.parts)
        self.basis: list[tuple[int, int, ClusterMorphism]] = []
        self.index: dict[tuple[int, int], list[int]] = {}
        for i in range(n):
            for j in range(n):
                ids = []
                for b in cluster_hom(self.parts[i], self.parts[j]).basis():
                    ids.append(len(self.basis))
                    self.basis.append((i, j, b))
                self.index[(i, j)] = ids
        dim = len(self.basis)
        table: dict = {}
        for k, (j, l, b) in enumerate(self.basis):
            for i in range(n):
                space = cluster_hom(self.parts[i], self.parts[l])
                for k2 in self.index[(i, j)]:
                    comp = cluster_compose(b, self.basis[k2][2])
                    cs = space.coords(comp)
                    ids = self.index[(i, l)]
                    prod = {ids[t]: c for t, c in enumerate(cs) if c != 0}
                    if prod:
                        table[(k, k2)] = prod
        self.idempotents = []
        one = [flint.fmpq(0)] * dim
        for i, p in enumerate(self.parts):
            cs = cluster_hom(p, p).coords(cluster_identity(p))
            e = [flint.fmpq(0)] * dim
            for t, c in zip(self.index[(i, i)], cs):
                e[t] = c
                one[t] += c
            self.idempotents.append(e)
        labels = [f"{self.parts[i].label}->{self.parts[j].label}#{k}" for k, (i, j, _) in enumerate(self.basis)]
        self.algebra = FDAlgebra(dim, table, one, labels=labels, idempotents=self.idempotents, check=check)
        self._modules: dict = {}

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def module_of(self, x: ClusterObject, label: str = "") -> FDModule:
        """Hom_C(T, x) as a right B-module."""
        key = id(x)
        hit = self._modules.get(key)
        if hit is not None and hit[0] is x:
            return hit[1]
        spaces = [cluster_hom(p, x) for p in self.parts]
        offs = []
        acc = 0
        for s in spaces:
            offs.append(acc)
            acc += s.total_dim
        dim = acc
        bases = [s.basis() for s in spaces]
        actions = []
        for i, j, b in self.basis:
            # h in Hom(T_j, x) goes to h ∘ b in Hom(T_i, x)
            rows = [[flint.fmpq(0)] * dim for _ in range(dim)]
            for r, h in enumerate(bases[j]):
                cs = spaces[i].coords(cluster_compose(h, b))
                for t, c in enumerate(cs):
                    if c != 0:
                        rows[offs[j] + r][offs[i] + t] = c
            actions.append(QMatrix(dim, dim, [e for row in rows for e in row]))
        mod = FDModule(self.algebra, dim, actions=actions, label=label or x.label)
        mod._cache["offsets"] = offs
        self._modules[key] = (x, mod)
        return mod

    def map_of(self, g: ClusterMorphism) -> QMatrix:
        """Hom_C(T, g) as a matrix acting on rows."""
        x, y = g.source, g.target
        mx, my = self.module_of(x), self.module_of(y)
        ox, oy = mx._cache["offsets"], my._cache["offsets"]
        ents = [flint.fmpq(0)] * (mx.dim * my.dim)
        for i, p in enumerate(self.parts):
            sy = cluster_hom(p, y)
            for r, h in enumerate(cluster_hom(p, x).basis()):
                cs = sy.coords(cluster_compose(g, h))
                for t, c in enumerate(cs):
                    if c != 0:
                        ents[(ox[i] + r) * my.dim + oy[i] + t] = c
        return QMatrix(mx.dim, my.dim, ents)

    def quotient_dim(self, x: ClusterObject, y: ClusterObject) -> int:
        """dim Hom_C(x, y) minus the maps factoring through add(tau_C T)."""
        space = cluster_hom(x, y)
        rows = []
        for p in self.parts:
            mid = tau_c(p)
            for a in cluster_hom(x, mid).basis():
                for b in cluster_hom(mid, y).basis():
                    rows.append(space.coords(cluster_compose(b, a)))
        if not rows:
            return space.total_dim
        return space.total_dim - Subspace.spanned_by(QMatrix.from_rows(rows, space.total_dim)).dim


def endo_algebra(parts: Sequence[ClusterObject], check: bool = True) -> ClusterTiltedAlgebra:
    return ClusterTiltedAlgebra(parts, check=check)


_ALGEBRAS: dict = {}


def _as_algebra(parts) -> ClusterTiltedAlgebra:
    if isinstance(parts, ClusterTiltedAlgebra):
        return parts
    key = tuple(id(p) for p in parts)
    hit = _ALGEBRAS.get(key)
    if hit is None or any(a is not b for a, b in zip(hit.parts, parts)):
        hit = ClusterTiltedAlgebra(parts)
        _ALGEBRAS[key] = hit
    return hit


def bmodule_of(parts, x: ClusterObject) -> FDModule:
    """Hom_C(T, x) as a right B-module; ``parts`` is T or an algebra built from it."""
    return _as_algebra(parts).module_of(x)


def bmodule_map(parts, g: ClusterMorphism) -> QMatrix:
    """Matrix of Hom_C(T, g) acting on rows."""
    return _as_algebra(parts).map_of(g)


def bhom_quotient_check(parts, x: ClusterObject, y: ClusterObject) -> tuple[int, int]:
    """(dim Hom_B(Hom_C(T,x), Hom_C(T,y)), dim Hom_C(x,y) / add(tau_C T))."""
    b = _as_algebra(parts)
    direct = len(module_hom(b.module_of(x), b.module_of(y)))
    return direct, b.quotient_dim(x, y)
