"""End-to-end construction of the Auslander generator and the certificate.

For a postprojective tilting H-module T with slice U (in the preprojective
component, see ``tilting.find_slice``) the generator over B = End_C(T) is

    M = Hom_C(T, U) ⊕ Hom_C(T, H[1]) ⊕ ⊕_{G in F(U)} Hom_C(T, G),

and the certificate records gl.dim End_B(M), the generator-cogenerator
property and a sampled check of the approximation sequences.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .artheory import KnittedComponent, Slice, fsigma_indecs, knit, slice_at, tau
from .clustercat import (
    ClusterMorphism,
    ClusterObject,
    ClusterTiltedAlgebra,
    cluster_hom,
    is_cluster_tilting_object,
    tau_c,
)
from .errors import (
    DepthExceeded,
    DynkinQuiver,
    GenCogenFailure,
    KernelNotInSlice,
    NotInTorsionClass,
    NotTilting,
    ProjectiveInput,
    ProjectiveSummandInTauT,
    QuiverError,
    RepDimError,
)
from .exactlin import QMatrix, Subspace, hstack, rank, vstack
from .fdalg import (
    FDModule,
    endomorphism_algebra,
    find_module_isomorphism,
    global_dimension,
    is_module_map,
    min_resolution,
    module_hom,
    projectives_and_injectives,
    simple_modules,
)
from .quiverrep import (
    Quiver,
    QuiverType,
    Rep,
    classify_type,
    cokernel,
    direct_sum,
    dynkin_label,
    has_projective_summand,
    hom_space,
    summand_inclusion,
    summand_projection,
)
from .tilting import (
    TorsionPairView,
    find_slice,
    in_torsion_class,
    is_tilting,
    right_approximation_by_slice,
)

__all__ = [
    "Instance",
    "build_instance",
    "GeneratorSummand",
    "AuslanderGenerator",
    "build_generator",
    "Sample",
    "sample_torsion_modules",
    "ApproxSample",
    "approx_sequence",
    "hom_to_translate_check",
    "fsigma_degree_check",
    "Certificate",
    "certify",
    "LOWER_BOUND_NOTE",
]

LOWER_BOUND_NOTE = (
    "rep.dim B >= 3 is not recomputed: B is representation-infinite because the quiver is not "
    "of Dynkin type, and an algebra has rep.dim <= 2 exactly when it is representation-finite."
)

_EXTRA_DEPTH = 4
_SLICE_SEARCH = 12


# ---------------------------------------------------------------------------
# instances


@dataclass
class Instance:
    """Validated input: the quiver, T = ⊕ tau^{-k} P_v, the knitted component and the slice.

    Attributes:
        spec: (vertex, power) pairs describing the summands of T.
        t_parts: the indecomposable summands of T, in ``spec`` order.
        cluster_parts: the same summands as objects of the cluster category.
    """

    quiver: Quiver
    spec: list[tuple[str, int]]
    t: Rep
    t_parts: list[Rep]
    component: KnittedComponent
    slice: Slice
    cluster_parts: list[ClusterObject]
    depth: int
    _b: ClusterTiltedAlgebra | None = field(default=None, repr=False)

    @property
    def slice_power(self) -> int:
        return self.slice.power

    @property
    def b(self) -> ClusterTiltedAlgebra:
        """B = End_C(T), built on first use."""
        if self._b is None:
            self._b = ClusterTiltedAlgebra(self.cluster_parts)
        return self._b

    def echo(self) -> dict:
        q = self.quiver
        return {
            "quiver": {
                "vertices": list(q.vertices),
                "arrows": [[a.name, a.source, a.target] for a in q.arrows],
            },
            "tilting": [[v, k] for v, k in self.spec],
            "type": dynkin_label(q) or "non-Dynkin",
        }


def _normalize_spec(q: Quiver, spec) -> list[tuple[str, int]]:
    out = []
    for item in spec:
        v, k = item
        v = q.v(v)
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise QuiverError(f"power for vertex {v} must be a nonnegative integer")
        out.append((v, k))
    return out


def build_instance(q: Quiver, spec: Sequence, depth: int | None = None, slice_power: int | None = None) -> Instance:
    """Validate the hypotheses and locate the slice.

    Args:
        q: an acyclic connected quiver.
        spec: (vertex, power) pairs; T is the direct sum of tau^{-power} P_vertex.
        depth: knitting depth; ``None`` means slice power + 4.
        slice_power: force the slice power instead of searching.

    Raises:
        DynkinQuiver: the quiver is of Dynkin type.
        ProjectiveSummandInTauT: T or tau T has a projective summand.
        NotTilting: T is not a tilting module.
        DepthExceeded: no slice within the knitted depth.
    """
    if classify_type(q) is QuiverType.DYNKIN:
        raise DynkinQuiver(f"quiver of type {dynkin_label(q)} is representation-finite")
    spec = _normalize_spec(q, spec)
    if not spec:
        raise NotTilting("empty tilting module")
    for v, k in spec:
        if k < 2:
            what = "T" if k == 0 else "tau T"
            raise ProjectiveSummandInTauT(f"summand at vertex {v} with power {k} makes {what} have a projective summand")
    max_power = max(k for _, k in spec)
    if depth is not None and depth < max_power:
        raise DepthExceeded(f"depth {depth} is below the largest power {max_power}")
    comp = knit(q, depth if depth is not None else max_power + 2)
    parts = [comp.cell(k, v) for v, k in spec]
    t = direct_sum(parts, q)
    if any(has_projective_summand(p) or has_projective_summand(tau(p)) for p in parts):
        raise ProjectiveSummandInTauT("T or tau T has a projective summand")
    ok, report = is_tilting(q, t)
    if not ok:
        raise NotTilting(
            f"Ext^1(T,T) has dimension {report['ext1_dim']} and T has "
            f"{report['distinct_summands']} of {report['vertices']} summands"
        )
    if slice_power is not None:
        if depth is None:
            comp.extend(slice_power + _EXTRA_DEPTH)
        sl = slice_at(comp, slice_power)
    elif depth is not None:
        sl = find_slice(comp, t, parts)
    else:
        sl = None
        limit = max_power + _SLICE_SEARCH
        while sl is None:
            try:
                sl = find_slice(comp, t, parts)
            except DepthExceeded:
                if comp.depth >= limit:
                    raise
                comp.extend(comp.depth + 2)
        comp.extend(sl.power + _EXTRA_DEPTH)
    if sl.power + 1 > comp.depth:
        raise DepthExceeded(f"depth {comp.depth} does not reach past the slice at power {sl.power}")
    cparts = [ClusterObject.module(p, label=f"T{i}") for i, p in enumerate(parts)]
    if not is_cluster_tilting_object(cparts):
        raise NotTilting("T is not cluster-tilting in the cluster category")
    return Instance(q, spec, t, parts, comp, sl, cparts, comp.depth)


# ---------------------------------------------------------------------------
# the generator


@dataclass
class GeneratorSummand:
    """One indecomposable summand Hom_C(T, obj) of M.

    Attributes:
        part: ``"slice"``, ``"shifted"`` or ``"fsigma"``.
    """

    label: str
    part: str
    obj: ClusterObject
    module: FDModule

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass
class AuslanderGenerator:
    """M = Σ′ ⊕ Q′ ⊕ G after dropping zero and duplicate summands.

    Attributes:
        candidates: number of objects considered before pruning.
        dropped: labels removed as zero or duplicate, with the reason.
        projective_found / injective_found: for each indecomposable
            projective / injective B-module, whether it is a summand of M.
    """

    sigma_prime: list[GeneratorSummand]
    q_prime: list[GeneratorSummand]
    g_part: list[GeneratorSummand]
    candidates: int
    dropped: list[tuple[str, str]]
    projective_found: list[bool]
    injective_found: list[bool]
    slice_objects: list[ClusterObject] = field(default_factory=list)
    tampered: str | None = None

    @property
    def summands(self) -> list[GeneratorSummand]:
        return self.sigma_prime + self.q_prime + self.g_part

    @property
    def modules(self) -> list[FDModule]:
        return [s.module for s in self.summands]

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.summands)

    @property
    def gen_cogen(self) -> bool:
        return all(self.projective_found) and all(self.injective_found)


def _has_summand(mods: Sequence[FDModule], x: FDModule) -> bool:
    return any(find_module_isomorphism(m, x) is not None for m in mods)


def _slice_label(power: int, v: str) -> str:
    return f"tau^-{power} P{v}" if power else f"P{v}"


def build_generator(inst: Instance, tamper: str | None = None, check: bool = True) -> AuslanderGenerator:
    """Assemble M and check that it is a generator-cogenerator of mod B.

    Args:
        tamper: ``"drop-injective"`` removes the summand isomorphic to the
            first indecomposable injective B-module (negative control).
        check: raise when the generator-cogenerator check fails.

    Raises:
        GenCogenFailure: a projective or injective B-module is not a summand of M.
    """
    b = inst.b
    q = inst.quiver
    cands: list[tuple[str, str, ClusterObject]] = []
    sl = inst.slice
    for v, mod in zip(q.vertices, sl.modules):
        cands.append(("slice", _slice_label(sl.power, v), ClusterObject.module(mod, label=_slice_label(sl.power, v))))
    for v in q.vertices:
        cands.append(("shifted", f"P{v}[1]", ClusterObject.shifted(q, v)))
    for cell in fsigma_indecs(inst.component, sl):
        cands.append(("fsigma", cell.label, ClusterObject.module(cell.rep, label=cell.label)))
    kept: list[GeneratorSummand] = []
    dropped: list[tuple[str, str]] = []
    for part, label, obj in cands:
        mod = b.module_of(obj, label=label)
        if mod.dim == 0:
            dropped.append((label, "zero"))
            continue
        dup = next((k for k in kept if find_module_isomorphism(k.module, mod) is not None), None)
        if dup is not None:
            dropped.append((label, f"isomorphic to {dup.label}"))
            continue
        kept.append(GeneratorSummand(label, part, obj, mod))
    projs, injs = projectives_and_injectives(b.algebra)
    if tamper == "drop-injective":
        victim = next((k for k in kept if find_module_isomorphism(k.module, injs[0]) is not None), None)
        if victim is not None:
            kept.remove(victim)
            dropped.append((victim.label, "removed by tampering"))
    elif tamper is not None:
        raise ValueError(f"unknown tamper mode {tamper!r}")
    mods = [k.module for k in kept]
    gen = AuslanderGenerator(
        sigma_prime=[k for k in kept if k.part == "slice"],
        q_prime=[k for k in kept if k.part == "shifted"],
        g_part=[k for k in kept if k.part == "fsigma"],
        candidates=len(cands),
        dropped=dropped,
        projective_found=[_has_summand(mods, p) for p in projs],
        injective_found=[_has_summand(mods, i) for i in injs],
        slice_objects=[obj for part, _, obj in cands if part == "slice"],
        tampered=tamper,
    )
    if check and not gen.gen_cogen:
        raise GenCogenFailure(_gen_cogen_message(gen))
    return gen


def _gen_cogen_message(gen: AuslanderGenerator) -> str:
    miss = [f"P{i}" for i, ok in enumerate(gen.projective_found) if not ok]
    miss += [f"I{i}" for i, ok in enumerate(gen.injective_found) if not ok]
    return "indecomposable B-modules missing from add(M): " + ", ".join(miss)


# ---------------------------------------------------------------------------
# samples from T(tau^{-1} U)


@dataclass
class Sample:
    """A module of the torsion class of the shifted slice.

    Attributes:
        origin: ``"cell"`` for a cell of the component, ``"cokernel"`` for a
            cokernel of a random map between modules of add(tau^{-1} U).
    """

    label: str
    origin: str
    rep: Rep


def _shifted_family(inst: Instance) -> list[Rep]:
    return [inst.component.cell(inst.slice_power + 1, v) for v in inst.quiver.vertices]


def _cells_beyond(inst: Instance) -> list[tuple[str, Rep]]:
    out = []
    for cell in inst.component.listing():
        if cell.power > inst.slice_power:
            out.append((cell.label, cell.rep))
    return out


def _random_cokernel(inst: Instance, rng: random.Random) -> tuple[str, Rep] | None:
    m = inst.slice_power
    verts = inst.quiver.vertices
    hi = min(m + 2, inst.depth)
    src_key = (rng.randint(m + 1, hi), rng.choice(verts))
    n_tgt = rng.choice((1, 1, 2))
    tgt_keys = [(rng.randint(src_key[0], hi), rng.choice(verts)) for _ in range(n_tgt)]
    src = inst.component.cell(*src_key)
    tgts = [inst.component.cell(*k) for k in tgt_keys]
    tgt = direct_sum(tgts, inst.quiver)
    blocks = []
    for j, t in enumerate(tgts):
        basis = hom_space(src, t).basis
        if not basis:
            continue
        acc = None
        for b in basis:
            c = rng.randint(-3, 3)
            if c:
                acc = b.scale(c) if acc is None else acc + b.scale(c)
        if acc is not None:
            blocks.append((j, acc))
    if not blocks:
        return None
    f = None
    for j, h in blocks:
        term = summand_inclusion(tgt, j) @ h if len(tgts) > 1 else h
        f = term if f is None else f + term
    cok = cokernel(f).rep
    if cok.total_dim == 0:
        return None
    name = " + ".join(_slice_label(k, v) for k, v in tgt_keys)
    return f"coker({_slice_label(*src_key)} -> {name})", cok


def sample_torsion_modules(inst: Instance, n: int, seed: int = 0) -> list[Sample]:
    """``n`` modules of T(tau^{-1} U), deterministic in ``seed``.

    Even-indexed samples are cells beyond the slice; odd-indexed samples are
    cokernels of random integer combinations of Hom-basis maps from one
    module of add(tau^{-1} U) to a sum of one or two others.  Each sample
    uses its own generator seeded by ``(seed, index)``.  Every sample is
    re-checked for Ext^1(tau^{-1} U, X) = 0.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    cells = _cells_beyond(inst)
    fam = _shifted_family(inst)
    view = TorsionPairView(direct_sum(fam, inst.quiver), fam)
    out = []
    for i in range(n):
        rng = random.Random(f"{seed}:{i}")
        got = None
        if i % 2 == 1:
            for _ in range(20):
                got = _random_cokernel(inst, rng)
                if got is not None and in_torsion_class(view, got[1]):
                    break
                got = None
        if got is None:
            label, rep = cells[rng.randrange(len(cells))]
            got = (label, rep)
            origin = "cell"
        else:
            origin = "cokernel"
        if not in_torsion_class(view, got[1]):
            raise NotInTorsionClass(f"sample {got[0]} left the torsion class")
        out.append(Sample(got[0], origin, got[1]))
    return out


# ---------------------------------------------------------------------------
# the approximation sequence in mod B


@dataclass
class ApproxSample:
    """0 -> K′ -> E′ -> Y -> 0 in mod B transported from 0 -> K -> E -> X -> 0.

    Attributes:
        incl / proj: the maps K′ -> E′ and E′ -> Y as row-acting matrices.
        surjective: per summand label of M, whether Hom_B(N, E′) -> Hom_B(N, Y) is onto.
    """

    label: str
    origin: str
    x: Rep
    y: FDModule
    e_summands: list[int]
    k_summands: list[int]
    dim_y: int
    dim_e: int
    dim_k: int
    incl: QMatrix
    proj: QMatrix
    exact: bool
    module_maps: bool
    surjective: dict[str, bool]

    @property
    def passed(self) -> bool:
        return self.exact and self.module_maps and all(self.surjective.values())


def approx_sequence(inst: Instance, gen: AuslanderGenerator, x: Rep | Sample) -> ApproxSample:
    """Transport the minimal slice approximation of ``x`` to mod B and test it.

    Checks (1) exactness of 0 -> K′ -> E′ -> Y -> 0 by rank identities and
    (2) that Hom_B(N, E′) -> Hom_B(N, Y) is onto for every summand N of M.

    Raises:
        NotInTorsionClass: x is not generated by the slice.
        KernelNotInSlice: the kernel of the approximation is not in add(slice).
    """
    label, origin = ("X", "given")
    if isinstance(x, Sample):
        label, origin, x = x.label, x.origin, x.rep
    b = inst.b
    seq = right_approximation_by_slice(inst.slice, x)
    sig = gen.slice_objects
    sig_mods = [b.module_of(o) for o in sig]
    xo = ClusterObject.module(x, label=label)
    y = b.module_of(xo)
    es, ks = seq.e_summands, seq.k_summands or []
    # E′ -> Y, one block row per summand of E
    f_blocks = []
    for j, i in enumerate(es):
        fj = seq.f @ summand_inclusion(seq.e, j) if len(es) > 1 else seq.f
        f_blocks.append(b.map_of(ClusterMorphism(sig[i], xo, fj, None)))
    dim_e = sum(sig_mods[i].dim for i in es)
    dim_k = sum(sig_mods[i].dim for i in ks)
    proj = vstack(f_blocks, cols=y.dim) if f_blocks else QMatrix.zeros(0, y.dim)
    # K′ -> E′ from the composite ⊕ U[ks] -> K -> E
    rows = []
    if ks:
        g = seq.iota @ seq.k_iso
        for a, ia in enumerate(ks):
            ga = g @ summand_inclusion(g.source, a) if len(ks) > 1 else g
            row = []
            for bb, ib in enumerate(es):
                blk = summand_projection(seq.e, bb) @ ga if len(es) > 1 else ga
                row.append(b.map_of(ClusterMorphism(sig[ia], sig[ib], blk, None)))
            rows.append(hstack(row, rows=sig_mods[ia].dim))
    incl = vstack(rows, cols=dim_e) if rows else QMatrix.zeros(0, dim_e)
    module_maps = all(is_module_map(sig_mods[i], y, fb) for i, fb in zip(es, f_blocks))
    exact = (
        (incl @ proj).is_zero()
        and rank(incl) == dim_k
        and rank(proj) == y.dim
        and dim_k - dim_e + y.dim == 0
    )
    surj = {}
    for s in gen.summands:
        target_dim = len(module_hom(s.module, y))
        vecs = []
        for i, fb in zip(es, f_blocks):
            for h in module_hom(s.module, sig_mods[i]):
                vecs.append((h @ fb).flat())
        got = Subspace.spanned_by(QMatrix.from_rows(vecs, s.module.dim * y.dim)).dim if vecs else 0
        surj[s.label] = got == target_dim
    return ApproxSample(
        label=label,
        origin=origin,
        x=x,
        y=y,
        e_summands=list(es),
        k_summands=list(ks),
        dim_y=y.dim,
        dim_e=dim_e,
        dim_k=dim_k,
        incl=incl,
        proj=proj,
        exact=exact,
        module_maps=module_maps,
        surjective=surj,
    )


# ---------------------------------------------------------------------------
# checks on Hom spaces of the cluster category


def hom_to_translate_check(inst: Instance, x: Rep) -> bool:
    """Hom_H(x, tau E) = 0 for every slice module E, read off as the
    degree-0 part of Hom_C(x, tau_C E)."""
    xo = ClusterObject.module(x)
    for e in inst.slice.modules:
        if cluster_hom(xo, tau_c(ClusterObject.module(e))).dim0:
            return False
    return True


def fsigma_degree_check(inst: Instance, x: Rep) -> bool:
    """Hom_C(G, x) has no degree-1 part for every indecomposable G in F(U)."""
    xo = ClusterObject.module(x)
    for cell in fsigma_indecs(inst.component, inst.slice):
        if cluster_hom(ClusterObject.module(cell.rep), xo).dim1:
            return False
    return True


# ---------------------------------------------------------------------------
# certificate


@dataclass
class Certificate:
    """Audit trail of one certification run.  Plain data only, so that it
    round-trips through JSON."""

    instance: dict
    slice_power: int | None = None
    depth: int | None = None
    dim_b: int | None = None
    candidates: int | None = None
    inventory: list[dict] = field(default_factory=list)
    dropped: list[dict] = field(default_factory=list)
    dim_m: int | None = None
    dim_end: int | None = None
    resolutions: list[dict] = field(default_factory=list)
    gl_dim: dict | None = None
    gen_cogen: dict | None = None
    samples: list[dict] = field(default_factory=list)
    hom_checks: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    lower_bound: str = LOWER_BOUND_NOTE
    checks: list[dict] = field(default_factory=list)
    verdict: str = "failure"
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(**d)

    @property
    def first_failure(self) -> dict | None:
        """The first failing check entry, if any."""
        return next((c for c in self.checks if not c["passed"]), None)


def _record(cert: Certificate, name: str, passed: bool, detail: str = "", code: str | None = None) -> bool:
    """Append a check; failures also add a diagnostic tagged with ``code``."""
    entry = {"name": name, "passed": bool(passed), "detail": detail, "code": None if passed else (code or name)}
    cert.checks.append(entry)
    if not passed:
        cert.diagnostics.append(f"{entry['code']}: {detail}" if detail else entry["code"])
    return passed


def certify(
    inst: Instance,
    samples: int = 20,
    seed: int = 0,
    bound: int = 10,
    tamper: str | None = None,
) -> Certificate:
    """Run every check and return the certificate.  Errors become diagnostics.

    The verdict is ``"success"`` iff M is a generator-cogenerator, End_B(M)
    has global dimension at most 3, every sampled approximation sequence
    passes and the Hom-space checks hold.
    """
    cert = Certificate(instance=inst.echo())
    cert.parameters = {"samples": samples, "seed": seed, "resolution_bound": bound, "tamper": tamper}
    cert.slice_power = inst.slice_power
    cert.depth = inst.depth
    try:
        _certify_into(cert, inst, samples, seed, bound, tamper)
    except RepDimError as exc:
        _record(cert, "pipeline_error", False, exc.message, exc.code)
    ok = bool(cert.checks) and all(c["passed"] for c in cert.checks)
    cert.verdict = "success" if ok else "failure"
    return cert


def _certify_into(cert: Certificate, inst: Instance, samples: int, seed: int, bound: int, tamper: str | None) -> None:
    b = inst.b
    cert.dim_b = b.dim
    gen = build_generator(inst, tamper=tamper, check=False)
    cert.candidates = gen.candidates
    cert.inventory = sorted(
        ({"label": s.label, "part": s.part, "dim": s.dim, "dim_vector": list(s.module.dim_vector())} for s in gen.summands),
        key=lambda d: d["label"],
    )
    cert.dropped = sorted(({"label": lab, "reason": why} for lab, why in gen.dropped), key=lambda d: d["label"])
    cert.dim_m = gen.dim
    cert.gen_cogen = {"projectives": gen.projective_found, "injectives": gen.injective_found}
    detail = "all projective and injective B-modules found" if gen.gen_cogen else _gen_cogen_message(gen)
    if not _record(cert, "generator_cogenerator", gen.gen_cogen, detail, "GenCogenFailure"):
        return
    end = endomorphism_algebra(gen.modules)
    cert.dim_end = end.algebra.dim
    simples = simple_modules(end.algebra)
    res = []
    for i, s in enumerate(simples):
        tr = min_resolution(s, bound)
        res.append(
            {
                "simple": i,
                "summand": gen.summands[i].label,
                "length": tr.length if tr.terminated else None,
                "terms": [t.dim for t in tr.terms],
                "validated": tr.validate(),
            }
        )
    cert.resolutions = sorted(res, key=lambda d: d["summand"])
    gd = global_dimension(end.algebra, bound)
    cert.gl_dim = {"value": gd.value, "exact": gd.exact, "text": str(gd)}
    valid = all(r["validated"] for r in res)
    _record(cert, "resolutions_exact", valid, "all resolutions re-validated" if valid else "a resolution failed re-validation")
    _record(cert, "global_dimension", gd.exact and gd.value <= 3, f"gl.dim End_B(M) is {gd}", "GlobalDimensionTooLarge")
    drawn = sample_torsion_modules(inst, samples, seed)
    results = []
    translate_ok = fsigma_ok = 0
    for smp in drawn:
        try:
            a = approx_sequence(inst, gen, smp)
            entry = {
                "label": smp.label,
                "origin": smp.origin,
                "dim_vector": list(smp.rep.dim_vector),
                "dim_y": a.dim_y,
                "dim_e": a.dim_e,
                "dim_k": a.dim_k,
                "exact": a.exact,
                "module_maps": a.module_maps,
                "surjective": all(a.surjective.values()),
                "passed": a.passed,
                "error": None,
            }
        except (NotInTorsionClass, KernelNotInSlice, ProjectiveInput) as exc:
            entry = {
                "label": smp.label,
                "origin": smp.origin,
                "dim_vector": list(smp.rep.dim_vector),
                "passed": False,
                "error": exc.code,
            }
        results.append(entry)
        translate_ok += hom_to_translate_check(inst, smp.rep)
        fsigma_ok += fsigma_degree_check(inst, smp.rep)
    cert.samples = results
    n_pass = sum(r["passed"] for r in results)
    _record(cert, "approximation_samples", n_pass == len(results), f"{n_pass}/{len(results)} samples passed", "ApproximationFailure")
    cert.hom_checks = {
        "hom_to_translate_of_slice": {"checked": len(drawn), "passed": translate_ok},
        "fsigma_hom_in_degree_zero": {"checked": len(drawn), "passed": fsigma_ok},
    }
    _record(cert, "hom_to_translate_of_slice", translate_ok == len(drawn), f"{translate_ok}/{len(drawn)} samples", "HomCheckFailure")
    _record(cert, "fsigma_hom_in_degree_zero", fsigma_ok == len(drawn), f"{fsigma_ok}/{len(drawn)} samples", "HomCheckFailure")
