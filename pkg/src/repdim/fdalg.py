"""Finite-dimensional algebras given by structure constants, and their right modules.

Modules are right modules and vectors are rows: ``v . b = v @ action(b)``.
With this convention ``action(b b') = action(b) @ action(b')`` and a module
map ``F`` (also acting on rows) satisfies ``action_m(b) @ F = F @ action_n(b)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import flint

from .errors import NotSplit
from .exactlin import (
    CoordinateBasis,
    QMatrix,
    QuotientSpace,
    Subspace,
    block_diag,
    kernel_basis,
    rank,
    to_fmpq,
    vstack,
)

__all__ = [
    "FDAlgebra",
    "FDModule",
    "ResolutionTrace",
    "GlobalDimension",
    "radical",
    "primitive_idempotents",
    "projectives_and_injectives",
    "module_hom",
    "projective_cover",
    "min_resolution",
    "global_dimension",
    "simple_modules",
    "find_module_isomorphism",
    "endomorphism_algebra",
]

_CACHE = 50000
_ZERO = flint.fmpq(0)


def _zeros(n: int) -> list:
    return [_ZERO] * n


class FDAlgebra:
    """An associative unital algebra over the rationals.

    Args:
        dim: dimension.
        table: ``(i, j) -> {k: c}``; ``b_i b_j = sum_k c b_k``.  Missing
            pairs multiply to zero.
        identity: coordinates of the unit.
        labels: optional basis labels.
        idempotents: optional complete set of primitive orthogonal
            idempotents (coordinate vectors); verified before use.
        check: verify associativity and the unit on construction.
    """

    def __init__(
        self,
        dim: int,
        table: dict,
        identity: Sequence,
        labels: Sequence[str] | None = None,
        idempotents: Sequence[Sequence] | None = None,
        check: bool = True,
    ):
        self.dim = dim
        self.table: dict[tuple[int, int], list[tuple[int, flint.fmpq]]] = {}
        for (i, j), prod in table.items():
            items = prod.items() if isinstance(prod, dict) else prod
            ents = [(int(k), to_fmpq(c)) for k, c in items if c != 0]
            if ents:
                self.table[(i, j)] = ents
        self.identity = [to_fmpq(c) for c in identity]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(dim)]
        self.idempotent_hint = [[to_fmpq(c) for c in e] for e in idempotents] if idempotents else None
        self.right_partners: dict[int, list[int]] = {}
        self.left_partners: dict[int, list[int]] = {}
        for i, j in self.table:
            self.right_partners.setdefault(i, []).append(j)
            self.left_partners.setdefault(j, []).append(i)
        self._cache: dict = {}
        if check:
            self.verify()

    # -- arithmetic --------------------------------------------------------

    def basis_vector(self, i: int) -> list:
        v = _zeros(self.dim)
        v[i] = flint.fmpq(1)
        return v

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = _zeros(self.dim)
        nzy = [(j, b) for j, b in enumerate(y) if b != 0]
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in nzy:
                prod = self.table.get((i, j))
                if prod:
                    ab = a * b
                    for k, c in prod:
                        out[k] += ab * c
        return out

    def add(self, x: Sequence, y: Sequence) -> list:
        return [a + b for a, b in zip(x, y)]

    def scale(self, c, x: Sequence) -> list:
        c = to_fmpq(c)
        return [c * a for a in x]

    def _basis_product(self, i: int, j: int) -> dict:
        return dict(self.table.get((i, j), ()))

    def verify(self) -> None:
        """Check associativity on all basis triples and the two unit laws."""
        n = self.dim
        one = self.identity
        for i in range(n):
            e = self.basis_vector(i)
            if self.mul(one, e) != e or self.mul(e, one) != e:
                raise ValueError(f"identity fails on basis element {self.labels[i]}")

        def triple(i, j, l):
            lhs: dict = {}
            for k, c in self.table.get((i, j), ()):
                for m, d in self.table.get((k, l), ()):
                    lhs[m] = lhs.get(m, 0) + c * d
            rhs: dict = {}
            for k, c in self.table.get((j, l), ()):
                for m, d in self.table.get((i, k), ()):
                    rhs[m] = rhs.get(m, 0) + c * d
            lhs = {k: v for k, v in lhs.items() if v != 0}
            rhs = {k: v for k, v in rhs.items() if v != 0}
            if lhs != rhs:
                raise ValueError(f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})")

        # only triples where one of the two sides can be nonzero
        checked = set()
        for (i, j), prod in self.table.items():
            ls = set(self.right_partners.get(j, ()))
            for k, _ in prod:
                ls.update(self.right_partners.get(k, ()))
            for l in ls:
                checked.add((i, j, l))
                triple(i, j, l)
        for (j, l), prod in self.table.items():
            is_ = set()
            for k, _ in prod:
                is_.update(self.left_partners.get(k, ()))
            for i in is_:
                if (i, j, l) not in checked:
                    triple(i, j, l)

    # -- structure ---------------------------------------------------------

    def trace_vector(self) -> list:
        """t_k = trace of left multiplication by b_k."""
        if "trace" not in self._cache:
            t = _zeros(self.dim)
            for (k, l), prod in self.table.items():
                for m, c in prod:
                    if m == l:
                        t[k] += c
            self._cache["trace"] = t
        return self._cache["trace"]

    def trace_form(self) -> QMatrix:
        """Gram matrix tr(L_a L_b) = tr(L_{ab})."""
        t = self.trace_vector()
        n = self.dim
        ents = _zeros(n * n)
        for (a, b), prod in self.table.items():
            s = _ZERO
            for k, c in prod:
                if t[k] != 0:
                    s += c * t[k]
            ents[a * n + b] = s
        return QMatrix(n, n, ents)

    def radical(self) -> Subspace:
        if "rad" not in self._cache:
            self._cache["rad"] = kernel_basis(self.trace_form())
        return self._cache["rad"]

    def radical_power(self, k: int) -> Subspace:
        key = ("radpow", k)
        if key not in self._cache:
            if k <= 1:
                self._cache[key] = self.radical()
            else:
                prev = self.radical_power(k - 1)
                rad = self.radical()
                rows = []
                for x in prev.vectors():
                    for y in rad.vectors():
                        p = self.mul(x, y)
                        if any(c != 0 for c in p):
                            rows.append(p)
                self._cache[key] = Subspace.spanned_by(QMatrix.from_rows(rows, self.dim)) if rows else Subspace.zero(self.dim)
        return self._cache[key]

    def arrows(self) -> list[list]:
        """A complement of rad^2 in rad; together with the idempotents it generates the algebra."""
        if "arrows" not in self._cache:
            rad = self.radical()
            rad2 = self.radical_power(2)
            coords = [rad.coords(v) for v in rad2.vectors()]
            sub = Subspace.spanned_by(QMatrix.from_rows(coords, rad.dim)) if coords else Subspace.zero(rad.dim)
            quo = QuotientSpace(sub)
            out = []
            for j in quo.free:
                c = _zeros(rad.dim)
                c[j] = flint.fmpq(1)
                out.append(rad.combine(c))
            self._cache["arrows"] = out
        return self._cache["arrows"]

    def generators(self) -> list[list]:
        return [list(e) for e in primitive_idempotents(self)] + self.arrows()

    def projective(self, i: int) -> "FDModule":
        return projectives_and_injectives(self)[0][i]

    def injective(self, i: int) -> "FDModule":
        return projectives_and_injectives(self)[1][i]

    def __repr__(self) -> str:
        return f"FDAlgebra(dim={self.dim})"


def radical(a: FDAlgebra) -> Subspace:
    """Radical as the kernel of the trace form (valid in characteristic 0)."""
    return a.radical()


# ---------------------------------------------------------------------------
# idempotents


def _is_idempotent(a: FDAlgebra, e: Sequence) -> bool:
    return a.mul(e, e) == list(e)


def _lift_idempotent(a: FDAlgebra, x: list) -> list:
    for _ in range(4 * a.dim.bit_length() + 8):
        x2 = a.mul(x, x)
        if x2 == x:
            return x
        x3 = a.mul(x2, x)
        x = [3 * p - 2 * q for p, q in zip(x2, x3)]
    raise ArithmeticError("idempotent lifting did not converge")


def _verify_hint(a: FDAlgebra, es: list) -> bool:
    one = a.identity
    tot = _zeros(a.dim)
    for e in es:
        tot = a.add(tot, e)
    if tot != one:
        return False
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            p = a.mul(e, f)
            if p != (e if i == j else _zeros(a.dim)):
                return False
    rad = a.radical()
    if a.dim - rad.dim != len(es):
        return False
    return all(not rad.contains(e) for e in es)


def _quotient_mult_matrix(a: FDAlgebra, x: list, quo: QuotientSpace) -> QMatrix:
    cols = []
    for j in quo.free:
        cols.append(quo.coords(a.mul(x, a.basis_vector(j))))
    return QMatrix.from_columns(cols, quo.dim)


def primitive_idempotents(a: FDAlgebra) -> list[list]:
    """Complete set of primitive orthogonal idempotents.

    Raises:
        NotSplit: a / rad is not a product of copies of the rationals.
    """
    if "idem" in a._cache:
        return a._cache["idem"]
    if a.idempotent_hint is not None and _verify_hint(a, a.idempotent_hint):
        a._cache["idem"] = a.idempotent_hint
        return a.idempotent_hint
    rad = a.radical()
    quo = QuotientSpace(rad)
    r = quo.dim
    # a / rad must be commutative
    reps = [quo.representative([1 if k == j else 0 for k in range(r)]) for j in range(r)]
    for x in reps:
        for y in reps:
            d = [p - q for p, q in zip(a.mul(x, y), a.mul(y, x))]
            if any(c != 0 for c in quo.coords(d)):
                raise NotSplit("semisimple quotient is not commutative")
    rng = random.Random(0xA1)
    for _ in range(60):
        x = _zeros(a.dim)
        for rep in reps:
            c = rng.randint(-6, 6)
            x = [p + c * q for p, q in zip(x, rep)]
        poly = _quotient_mult_matrix(a, x, quo).charpoly()
        _, facs = poly.factor()
        if len(facs) != r or any(f.degree() != 1 or e != 1 for f, e in facs):
            continue
        roots = [-f.coeffs()[0] / f.coeffs()[1] for f, _ in facs]
        # Lagrange idempotents modulo the radical
        approx = []
        for i, li in enumerate(roots):
            acc = list(a.identity)
            for j, lj in enumerate(roots):
                if j == i:
                    continue
                shifted = [p - lj * q for p, q in zip(x, a.identity)]
                acc = a.scale(1 / (li - lj), a.mul(acc, shifted))
            approx.append(acc)
        es: list[list] = []
        for i in range(r - 1):
            rest = list(a.identity)
            for e in es:
                rest = [p - q for p, q in zip(rest, e)]
            y = a.mul(a.mul(rest, approx[i]), rest)
            es.append(_lift_idempotent(a, y))
        last = list(a.identity)
        for e in es:
            last = [p - q for p, q in zip(last, e)]
        es.append(last)
        a._cache["idem"] = es
        return es
    raise NotSplit("no element of the semisimple quotient with distinct rational eigenvalues found")


# ---------------------------------------------------------------------------
# modules


class FDModule:
    """A finite-dimensional right module.

    The action of each basis element is produced on demand by ``action_fn``
    (or read from ``actions``) and cached.
    """

    def __init__(
        self,
        algebra: FDAlgebra,
        dim: int,
        actions: Sequence[QMatrix] | None = None,
        action_fn: Callable[[int], QMatrix] | None = None,
        label: str = "",
        mul_fn: Callable[[list, list], list] | None = None,
    ):
        self.algebra = algebra
        self.dim = dim
        self.label = label
        self._mul = mul_fn
        self._actions: dict[int, QMatrix] = dict(enumerate(actions)) if actions is not None else {}
        self._fn = action_fn
        self._cache: dict = {}

    def action(self, k: int) -> QMatrix:
        m = self._actions.get(k)
        if m is None:
            if self._fn is None:
                raise KeyError(k)
            m = self._fn(k)
            self._actions[k] = m
        return m

    def act(self, x: Sequence) -> QMatrix:
        """Action of an algebra element given by coordinates."""
        acc = QMatrix.zeros(self.dim, self.dim)
        for k, c in enumerate(x):
            if c != 0:
                acc = acc + self.action(k).scale(c)
        return acc

    def right_mul(self, x: Sequence, w: Sequence) -> list:
        """The vector x . w for an algebra element w."""
        if self._mul is not None:
            return self._mul(list(x), list(w))
        if self.dim == 0:
            return []
        return (QMatrix.row(x) @ self.act(w)).flat()

    def generator_actions(self) -> list[QMatrix]:
        if "gens" not in self._cache:
            self._cache["gens"] = [self.act(g) for g in self.algebra.generators()]
        return self._cache["gens"]

    def idempotent_actions(self) -> list[QMatrix]:
        if "idem" not in self._cache:
            self._cache["idem"] = [self.act(e) for e in primitive_idempotents(self.algebra)]
        return self._cache["idem"]

    def dim_vector(self) -> tuple[int, ...]:
        """Dimensions of M e_i (ranks of the idempotent actions)."""
        return tuple(rank(m) for m in self.idempotent_actions())

    def validate(self) -> bool:
        a = self.algebra
        n = self.dim
        if self.act(a.identity) != QMatrix.identity(n):
            return False
        for (i, j), prod in a.table.items():
            rhs = QMatrix.zeros(n, n)
            for k, c in prod:
                rhs = rhs + self.action(k).scale(c)
            if self.action(i) @ self.action(j) != rhs:
                return False
        for i in range(a.dim):
            for j in range(a.dim):
                if (i, j) not in a.table and not (self.action(i) @ self.action(j)).is_zero():
                    return False
        return True

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self) -> str:
        return f"FDModule(dim={self.dim}{', ' + self.label if self.label else ''})"


def submodule(m: FDModule, sub: Subspace, label: str = "") -> FDModule:
    """The submodule spanned by the rows of ``sub`` (assumed closed)."""
    basis = sub.basis
    piv = sub.pivots

    def fn(k):
        img = basis @ m.action(k)
        return img.submatrix(range(img.rows), piv)

    def mul(x, w):
        return sub.coords(m.right_mul(sub.combine(x), w))

    return FDModule(m.algebra, sub.dim, action_fn=fn, label=label, mul_fn=mul)


def quotient_module(m: FDModule, sub: Subspace, label: str = "") -> tuple[FDModule, QMatrix]:
    """m / sub together with the projection matrix (dim m x dim quotient)."""
    quo = QuotientSpace(sub)

    def fn(k):
        act = m.action(k)
        rows = [quo.coords(act.row_vector(j)) for j in quo.free]
        return QMatrix.from_rows(rows, quo.dim) if rows else QMatrix.zeros(0, 0)

    proj_rows = []
    for j in range(m.dim):
        e = _zeros(m.dim)
        e[j] = flint.fmpq(1)
        proj_rows.append(quo.coords(e))
    proj = QMatrix.from_rows(proj_rows, quo.dim) if proj_rows else QMatrix.zeros(0, quo.dim)
    return FDModule(m.algebra, quo.dim, action_fn=fn, label=label), proj


def direct_sum_modules(mods: Sequence[FDModule], label: str = "") -> FDModule:
    mods = list(mods)
    if len(mods) == 1:
        return mods[0]
    a = mods[0].algebra if mods else None

    def fn(k):
        return block_diag([m.action(k) for m in mods])

    def mul(x, w):
        out, pos = [], 0
        for m in mods:
            out.extend(m.right_mul(x[pos : pos + m.dim], w))
            pos += m.dim
        return out

    out = FDModule(a, sum(m.dim for m in mods), action_fn=fn, label=label, mul_fn=mul)
    out._cache["summands"] = mods
    return out


def generated_submodule(m: FDModule, rows: Sequence[Sequence]) -> Subspace:
    """Smallest submodule containing the given vectors."""
    gens = m.generator_actions()
    if not rows:
        return Subspace.zero(m.dim)
    sub = Subspace.spanned_by(QMatrix.from_rows(rows, m.dim))
    while True:
        new = [sub.basis] + [sub.basis @ g for g in gens]
        nxt = Subspace.spanned_by(vstack(new, cols=m.dim))
        if nxt.dim == sub.dim:
            return sub
        sub = nxt


def radical_submodule(m: FDModule) -> Subspace:
    """m . rad, generated by the images of the arrows."""
    if "rad" not in m._cache:
        rows = []
        for g in m.algebra.arrows():
            act = m.act(g)
            rows.extend(act.row_vector(i) for i in range(act.rows))
        rows = [r for r in rows if any(c != 0 for c in r)]
        m._cache["rad"] = generated_submodule(m, rows) if rows else Subspace.zero(m.dim)
    return m._cache["rad"]


def _ideal_module(a: FDAlgebra, rows: list[list], side: str) -> FDModule:
    sub = Subspace.spanned_by(QMatrix.from_rows(rows, a.dim)) if rows else Subspace.zero(a.dim)
    vecs = sub.vectors()

    if side == "right":

        def fn(k):
            b = a.basis_vector(k)
            out = [sub.coords(a.mul(w, b)) for w in vecs]
            return QMatrix.from_rows(out, sub.dim) if out else QMatrix.zeros(0, 0)

    else:

        def fn(k):
            b = a.basis_vector(k)
            lam = [sub.coords(a.mul(b, w)) for w in vecs]
            m = QMatrix.from_rows(lam, sub.dim) if lam else QMatrix.zeros(0, 0)
            return m.T

    mod = FDModule(a, sub.dim, action_fn=fn, mul_fn=(lambda x, w: sub.coords(a.mul(sub.combine(x), w))) if side == "right" else None)
    mod._cache["ideal"] = sub
    return mod


def projectives_and_injectives(a: FDAlgebra) -> tuple[list[FDModule], list[FDModule]]:
    """Indecomposable projectives e_i A and injectives D(A e_i)."""
    if "pi" not in a._cache:
        es = primitive_idempotents(a)
        projs, injs = [], []
        for i, e in enumerate(es):
            right_rows = [a.mul(e, a.basis_vector(k)) for k in range(a.dim)]
            left_rows = [a.mul(a.basis_vector(k), e) for k in range(a.dim)]
            p = _ideal_module(a, [r for r in right_rows if any(r)], "right")
            p.label = f"P{i}"
            inj = _ideal_module(a, [r for r in left_rows if any(r)], "left")
            inj.label = f"I{i}"
            projs.append(p)
            injs.append(inj)
        a._cache["pi"] = (projs, injs)
    return a._cache["pi"]


def simple_modules(a: FDAlgebra) -> list[FDModule]:
    if "simples" not in a._cache:
        out = []
        for i, p in enumerate(projectives_and_injectives(a)[0]):
            s, _ = quotient_module(p, radical_submodule(p), label=f"S{i}")
            out.append(s)
        a._cache["simples"] = out
    return a._cache["simples"]


def _hom_equations(am: QMatrix, an: QMatrix, dm: int, dn: int) -> list[tuple[int, int, flint.fmpq]]:
    """Entries of the system am F - F an = 0 (F row-major, dm x dn)."""
    ents = []
    for r in range(dm):
        for k in range(dm):
            e = am[r, k]
            if e != 0:
                for c in range(dn):
                    ents.append((r * dn + c, k * dn + c, e))
    for k in range(dn):
        for c in range(dn):
            e = an[k, c]
            if e != 0:
                for r in range(dm):
                    ents.append((r * dn + c, r * dn + k, -e))
    return ents


@lru_cache(maxsize=_CACHE)
def module_hom(m: FDModule, n: FDModule) -> tuple[QMatrix, ...]:
    """Basis of Hom(m, n) as (dim m x dim n) matrices acting on rows."""
    dm, dn = m.dim, n.dim
    nunk = dm * dn
    if nunk == 0:
        return ()
    gm, gn = m.generator_actions(), n.generator_actions()
    blocks = []
    for am, an in zip(gm, gn):
        acc: dict = {}
        for row, col, e in _hom_equations(am, an, dm, dn):
            acc[(row, col)] = acc.get((row, col), 0) + e
        blocks.append(acc)
    neq = nunk * len(blocks)
    ents = _zeros(neq * nunk)
    for b, acc in enumerate(blocks):
        base = b * nunk
        for (row, col), e in acc.items():
            ents[(base + row) * nunk + col] = e
    ker = kernel_basis(QMatrix(neq, nunk, ents))
    return tuple(QMatrix(dm, dn, v) for v in ker.vectors())


def is_module_map(m: FDModule, n: FDModule, f: QMatrix) -> bool:
    return all(am @ f == f @ an for am, an in zip(m.generator_actions(), n.generator_actions()))


# ---------------------------------------------------------------------------
# projective covers and resolutions


@dataclass
class Cover:
    projective: FDModule
    map: QMatrix
    vertices: list[int]


def projective_cover(m: FDModule) -> Cover:
    """Minimal projective cover built from the top m / m rad."""
    a = m.algebra
    projs = projectives_and_injectives(a)[0]
    cur = radical_submodule(m)
    gens: list[tuple[int, list]] = []
    for i, ei in enumerate(m.idempotent_actions()):
        for r in range(ei.rows):
            x = ei.row_vector(r)
            if not any(c != 0 for c in x) or cur.contains(x):
                continue
            gens.append((i, x))
            cur = Subspace.spanned_by(vstack([cur.basis, QMatrix.row(x)], cols=m.dim))
    if cur.dim != m.dim:
        raise ArithmeticError("top generators do not span the module")
    parts = [projs[i] for i, _ in gens]
    p = direct_sum_modules(parts) if parts else FDModule(a, 0, actions=[QMatrix.zeros(0, 0)] * a.dim)
    rows = []
    for i, x in gens:
        sub = projs[i]._cache["ideal"]
        for w in sub.vectors():
            rows.append(m.right_mul(x, w))
    pmap = QMatrix.from_rows(rows, m.dim) if rows else QMatrix.zeros(0, m.dim)
    return Cover(p, pmap, [i for i, _ in gens])


@dataclass
class ResolutionTrace:
    """Minimal projective resolution ... -> P1 -> P0 -> module -> 0.

    ``maps[0]`` is the cover P0 -> module; ``maps[k]`` is P_k -> P_{k-1}.
    """

    module: FDModule
    terms: list[FDModule] = field(default_factory=list)
    maps: list[QMatrix] = field(default_factory=list)
    vertices: list[list[int]] = field(default_factory=list)
    terminated: bool = False

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)

    def validate(self) -> bool:
        """Consecutive composites vanish and every stage is exact."""
        if self.module.dim and rank(self.maps[0]) != self.module.dim:
            return False
        for k in range(1, len(self.maps)):
            if not (self.maps[k] @ self.maps[k - 1]).is_zero():
                return False
            if rank(self.maps[k]) + rank(self.maps[k - 1]) != self.terms[k - 1].dim:
                return False
        if self.terminated and self.maps:
            last = self.maps[-1]
            if rank(last) != self.terms[-1].dim:
                return False
        return True


def min_resolution(m: FDModule, bound: int) -> ResolutionTrace:
    """Iterated projective covers; at most ``bound`` terms P_0 .. P_{bound-1}."""
    trace = ResolutionTrace(module=m)
    if m.dim == 0:
        trace.terminated = True
        return trace
    cur = m
    inc = None
    for _ in range(bound):
        cov = projective_cover(cur)
        d = cov.map if inc is None else cov.map @ inc
        trace.terms.append(cov.projective)
        trace.maps.append(d)
        trace.vertices.append(cov.vertices)
        ker = kernel_basis(cov.map.T)
        if ker.dim == 0:
            trace.terminated = True
            return trace
        cur = submodule(cov.projective, ker)
        inc = ker.basis
    return trace


@dataclass(frozen=True)
class GlobalDimension:
    """Either an exact value or a lower bound reached by the search."""

    value: int
    exact: bool
    projective_dimensions: tuple = ()

    @classmethod
    def finite(cls, v: int, pds=()) -> "GlobalDimension":
        return cls(v, True, tuple(pds))

    @classmethod
    def at_least(cls, v: int, pds=()) -> "GlobalDimension":
        return cls(v, False, tuple(pds))

    def __str__(self) -> str:
        return f"Finite({self.value})" if self.exact else f"AtLeast({self.value})"


def global_dimension(a: FDAlgebra, bound: int = 10) -> GlobalDimension:
    """max over simples of the projective dimension, or a lower bound."""
    pds = []
    for s in simple_modules(a):
        tr = min_resolution(s, bound)
        pds.append(tr.length if tr.terminated else None)
    if any(p is None for p in pds):
        return GlobalDimension.at_least(bound, pds)
    return GlobalDimension.finite(max(pds) if pds else 0, pds)


def find_module_isomorphism(m: FDModule, n: FDModule) -> QMatrix | None:
    """An isomorphism m -> n between modules with local endomorphism rings."""
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return QMatrix.zeros(0, 0)
    fs = module_hom(m, n)
    gs = module_hom(n, m)
    for f in fs:
        if rank(f) == m.dim:
            return f
    for f in fs:
        for g in gs:
            if rank(f @ g) == m.dim:
                return f
    return None


# ---------------------------------------------------------------------------
# endomorphism algebras of direct sums of modules


def _radical_of_end(m: FDModule, basis: Sequence[QMatrix]) -> list[QMatrix]:
    """Radical of End(m) via the trace form on m (faithful, char 0)."""
    k = len(basis)
    if k == 0:
        return []
    n = m.dim
    vs = QMatrix(k, n * n, [e for b in basis for e in b.flat()])
    ts = QMatrix(k, n * n, [e for b in basis for e in b.T.flat()])
    gram = vs @ ts.T
    ker = kernel_basis(gram)
    out = []
    for vec in ker.vectors():
        acc = QMatrix.zeros(n, n)
        for c, b in zip(vec, basis):
            if c != 0:
                acc = acc + b.scale(c)
        out.append(acc)
    return out


@dataclass
class EndomorphismAlgebra:
    """End(⊕ N_s) with basis adapted to the summands.

    ``basis[i] = (s, t, matrix)`` is a map N_s -> N_t; the product is
    composition, ``phi * psi = phi ∘ psi``.
    """

    algebra: FDAlgebra
    modules: list[FDModule]
    basis: list[tuple[int, int, QMatrix]]


def endomorphism_algebra(modules: Sequence[FDModule], check: bool = True) -> EndomorphismAlgebra:
    """Endomorphism algebra of a direct sum of pairwise non-isomorphic
    modules with local endomorphism rings.

    The identity of each summand is a basis element and every other basis
    element lies in the radical.
    """
    modules = list(modules)
    r = len(modules)
    basis: list[tuple[int, int, QMatrix]] = []
    index: dict[tuple[int, int], list[int]] = {}
    coord: dict[tuple[int, int], CoordinateBasis] = {}
    idem_index = []
    for s in range(r):
        for t in range(r):
            hs = list(module_hom(modules[s], modules[t]))
            if s == t:
                rad = _radical_of_end(modules[s], hs)
                if len(rad) != len(hs) - 1:
                    raise ValueError(f"summand {s} does not have a local endomorphism ring")
                hs = [QMatrix.identity(modules[s].dim)] + rad
                idem_index.append(len(basis))
            ids = []
            for h in hs:
                ids.append(len(basis))
                basis.append((s, t, h))
            index[(s, t)] = ids
            if hs:
                coord[(s, t)] = CoordinateBasis(QMatrix.from_rows([h.flat() for h in hs]))
    table: dict = {}
    for t in range(r):
        for s in range(r):
            for u in range(r):
                cb = coord.get((s, u))
                for j in index[(s, t)]:
                    psi = basis[j][2]
                    for i in index[(t, u)]:
                        phi = basis[i][2]
                        prod = psi @ phi
                        if prod.is_zero():
                            continue
                        cs = cb.coords(prod.flat())
                        ids = index[(s, u)]
                        table[(i, j)] = {ids[k]: c for k, c in enumerate(cs) if c != 0}
    n = len(basis)
    one = _zeros(n)
    for i in idem_index:
        one[i] = flint.fmpq(1)
    idems = []
    for i in idem_index:
        e = _zeros(n)
        e[i] = flint.fmpq(1)
        idems.append(e)
    labels = [f"{s}->{t}#{k}" for k, (s, t, _) in enumerate(basis)]
    alg = FDAlgebra(n, table, one, labels=labels, idempotents=idems, check=check)
    return EndomorphismAlgebra(alg, modules, basis)
