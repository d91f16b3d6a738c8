"""Command-line interface: instance files, certificates and reports.

Usage::

    repdim validate INSTANCE
    repdim knit INSTANCE [--depth K]
    repdim certify INSTANCE [--samples N] [--seed S] [--resolution-bound R] [--out PATH]
    repdim approx-test INSTANCE [--samples N] [--seed S]

Exit codes: 0 success, 1 failure verdict, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .artheory import knit
from .errors import QuiverError, RepDimError, SchemaError
from .pipeline import (
    Certificate,
    approx_sequence,
    build_generator,
    build_instance,
    certify,
    sample_torsion_modules,
)
from .quiverrep import Quiver, dynkin_label

__all__ = [
    "InstanceFile",
    "parse_instance",
    "parse_instance_data",
    "canonical_json",
    "input_hash",
    "certificate_file",
    "load_certificate",
    "write_atomic",
    "emit_report",
    "run_command",
    "main",
]

CERT_FORMAT = "repdim-certificate/1"
DEFAULT_SAMPLES = 20
DEFAULT_BOUND = 10
DEFAULT_SEED = 0


@dataclass
class InstanceFile:
    """A parsed and schema-checked instance file.

    Attributes:
        spec: (vertex, power) pairs for the summands tau^{-power} P_vertex of T.
        slice_power: ``None`` for automatic slice search.
        options: ``depth`` (``None`` = auto), ``samples``, ``seed``, ``resolution_bound``.
        raw: the decoded JSON document, used for hashing and echoing.
    """

    quiver: Quiver
    spec: list[tuple[str, int]]
    slice_power: int | None
    options: dict
    raw: dict = field(repr=False)

    @property
    def sha256(self) -> str:
        return input_hash(self.raw)


def _int_field(value, name: str, minimum: int = 0) -> int:
    """Integer given as a JSON integer or as a string "p" or "p/q" with q | p."""
    if isinstance(value, bool):
        raise SchemaError(name, "expected an integer")
    if isinstance(value, int):
        out = value
    elif isinstance(value, str):
        try:
            frac = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(name, f"cannot read {value!r} as a rational number") from None
        if frac.denominator != 1:
            raise SchemaError(name, f"{value!r} is not an integer")
        out = int(frac)
    else:
        raise SchemaError(name, "expected an integer")
    if out < minimum:
        raise SchemaError(name, f"must be at least {minimum}")
    return out


def _require(d: dict, key: str, where: str, kind: type):
    if key not in d:
        raise SchemaError(f"{where}{key}", "missing")
    val = d[key]
    if not isinstance(val, kind):
        raise SchemaError(f"{where}{key}", f"expected {kind.__name__}")
    return val


def parse_instance_data(data) -> InstanceFile:
    """Validate a decoded instance document.

    Raises:
        SchemaError: naming the offending field.
    """
    if not isinstance(data, dict):
        raise SchemaError("<root>", "expected a JSON object")
    fld = data.get("field", "rational")
    if fld != "rational":
        raise SchemaError("field", f"unsupported field {fld!r}; only 'rational' is supported")
    qd = _require(data, "quiver", "", dict)
    verts = _require(qd, "vertices", "quiver.", list)
    if not verts:
        raise SchemaError("quiver.vertices", "empty")
    for i, v in enumerate(verts):
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise SchemaError(f"quiver.vertices[{i}]", "expected a string or integer label")
    vset = {str(v) for v in verts}
    arrows = []
    for i, a in enumerate(_require(qd, "arrows", "quiver.", list)):
        where = f"quiver.arrows[{i}]"
        if not isinstance(a, dict):
            raise SchemaError(where, "expected an object with name, source, target")
        for key in ("name", "source", "target"):
            if key not in a:
                raise SchemaError(f"{where}.{key}", "missing")
        if str(a["source"]) not in vset:
            raise SchemaError(f"{where}.source", f"unknown vertex {a['source']!r}")
        if str(a["target"]) not in vset:
            raise SchemaError(f"{where}.target", f"unknown vertex {a['target']!r}")
        arrows.append((str(a["name"]), str(a["source"]), str(a["target"])))
    try:
        q = Quiver(verts, arrows)
    except QuiverError as exc:
        raise SchemaError("quiver", exc.message) from None
    td = _require(data, "tilting", "", dict)
    kind = td.get("kind", "tau-inverse-shift")
    if kind != "tau-inverse-shift":
        raise SchemaError("tilting.kind", f"unsupported kind {kind!r}")
    spec = []
    for i, s in enumerate(_require(td, "summands", "tilting.", list)):
        where = f"tilting.summands[{i}]"
        if not isinstance(s, dict) or "vertex" not in s or "power" not in s:
            raise SchemaError(where, "expected an object with vertex and power")
        v = str(s["vertex"])
        if v not in vset:
            raise SchemaError(f"{where}.vertex", f"unknown vertex {s['vertex']!r}")
        spec.append((v, _int_field(s["power"], f"{where}.power")))
    if not spec:
        raise SchemaError("tilting.summands", "empty")
    sd = data.get("slice", {"kind": "auto"})
    if not isinstance(sd, dict):
        raise SchemaError("slice", "expected an object")
    skind = sd.get("kind", "auto")
    if skind == "auto":
        slice_power = None
    elif skind == "explicit":
        if "power" not in sd:
            raise SchemaError("slice.power", "missing")
        slice_power = _int_field(sd["power"], "slice.power", 1)
    else:
        raise SchemaError("slice.kind", f"expected 'auto' or 'explicit', got {skind!r}")
    od = data.get("options", {})
    if not isinstance(od, dict):
        raise SchemaError("options", "expected an object")
    unknown = sorted(set(od) - {"depth", "samples", "seed", "resolution_bound"})
    if unknown:
        raise SchemaError(f"options.{unknown[0]}", "unknown option")
    depth = od.get("depth", "auto")
    opts = {
        "depth": None if depth == "auto" else _int_field(depth, "options.depth", 1),
        "samples": _int_field(od.get("samples", DEFAULT_SAMPLES), "options.samples", 1),
        "seed": _int_field(od.get("seed", DEFAULT_SEED), "options.seed"),
        "resolution_bound": _int_field(od.get("resolution_bound", DEFAULT_BOUND), "options.resolution_bound", 1),
    }
    return InstanceFile(q, spec, slice_power, opts, data)


def parse_instance(path: str) -> InstanceFile:
    """Read and validate an instance file.

    Raises:
        SchemaError: malformed JSON or a field violating the schema.
        OSError: the file cannot be read.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("<root>", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return parse_instance_data(data)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def input_hash(raw: dict) -> str:
    """sha256 of the canonicalised instance document."""
    return hashlib.sha256(canonical_json(raw).encode("utf-8")).hexdigest()


def certificate_file(cert: Certificate, inst_file: InstanceFile, timestamp: str | None = None) -> dict:
    ts = timestamp or datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return {
        "format": CERT_FORMAT,
        "tool_version": __version__,
        "timestamp": ts,
        "input_sha256": inst_file.sha256,
        "certificate": cert.to_dict(),
    }


def load_certificate(path: str) -> tuple[dict, Certificate]:
    """Read a certificate file; returns (envelope, Certificate)."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != CERT_FORMAT:
        raise SchemaError("format", f"expected {CERT_FORMAT!r}")
    return doc, Certificate.from_dict(doc["certificate"])


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".repdim-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# reporting


def _echo_from_file(f: InstanceFile) -> dict:
    q = f.quiver
    return {
        "quiver": {"vertices": list(q.vertices), "arrows": [[a.name, a.source, a.target] for a in q.arrows]},
        "tilting": [[v, k] for v, k in f.spec],
        "type": dynkin_label(q) or "non-Dynkin",
    }


def _failed_certificate(f: InstanceFile, exc: RepDimError, params: dict) -> Certificate:
    cert = Certificate(instance=_echo_from_file(f), parameters=params)
    cert.checks.append({"name": "instance_hypotheses", "passed": False, "detail": exc.message, "code": exc.code})
    cert.diagnostics.append(f"{exc.code}: {exc.message}")
    cert.verdict = "failure"
    return cert


def emit_report(cert: Certificate) -> str:
    """Human-readable summary with a stable ordering."""
    inst = cert.instance
    lines = ["== repdim certificate =="]
    q = inst.get("quiver", {})
    arrows = ", ".join(f"{a}:{s}->{t}" for a, s, t in q.get("arrows", []))
    lines.append(f"quiver: vertices {', '.join(q.get('vertices', []))}; arrows {arrows}")
    lines.append(f"type: {inst.get('type')}")
    lines.append("tilting module: " + " + ".join(f"tau^-{k} P{v}" for v, k in inst.get("tilting", [])))
    if cert.slice_power is not None:
        lines.append(f"slice power: {cert.slice_power} (knitted to depth {cert.depth})")
    if cert.dim_b is not None:
        lines.append(f"dim B: {cert.dim_b}")
    if cert.inventory:
        lines.append(f"generator M: {len(cert.inventory)} summands of {cert.candidates} candidates, dim {cert.dim_m}")
        for it in cert.inventory:
            lines.append(f"  {it['label']:<16} {it['part']:<8} dim {it['dim']:>3}  {tuple(it['dim_vector'])}")
        for d in cert.dropped:
            lines.append(f"  dropped {d['label']}: {d['reason']}")
    if cert.gen_cogen is not None:
        p, i = cert.gen_cogen["projectives"], cert.gen_cogen["injectives"]
        lines.append(f"projectives in add(M): {sum(p)}/{len(p)}; injectives in add(M): {sum(i)}/{len(i)}")
    if cert.dim_end is not None:
        lines.append(f"dim End_B(M): {cert.dim_end}")
    if cert.resolutions:
        lines.append("projective dimensions of simple End_B(M)-modules:")
        for r in cert.resolutions:
            pd = r["length"] if r["length"] is not None else f">= {len(r['terms'])}"
            terms = " <- ".join(str(t) for t in r["terms"])
            lines.append(f"  at {r['summand']:<16} pd {pd}  terms {terms}")
    if cert.gl_dim is not None:
        lines.append(f"gl.dim End_B(M): {cert.gl_dim['text']}")
    if cert.samples:
        n_ok = sum(s["passed"] for s in cert.samples)
        lines.append(f"approximation samples: {n_ok}/{len(cert.samples)} passed")
    for name in sorted(cert.hom_checks):
        c = cert.hom_checks[name]
        lines.append(f"check {name}: {c['passed']}/{c['checked']}")
    if cert.verdict == "success":
        lines.append(f"lower bound: {cert.lower_bound}")
        lines.append("verdict: success, rep.dim B = 3 certified")
    else:
        first = cert.first_failure or {"name": "none recorded", "code": "unknown", "detail": ""}
        lines.append(f"verdict: failure, first failing check {first['name']} [{first['code']}]")
        if first["detail"]:
            lines.append(f"  {first['detail']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="repdim", description="Certify rep.dim B = 3 for cluster-concealed algebras.")
    p.add_argument("--version", action="version", version=f"repdim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("instance", help="instance JSON file")
        sp.add_argument("--depth", type=int, default=None, help="knitting depth (default: slice power + 4)")

    sp = sub.add_parser("validate", help="check the instance hypotheses")
    common(sp)
    sp = sub.add_parser("knit", help="list dimension vectors of the preprojective component")
    common(sp)
    for name, hlp in (("certify", "build the generator and emit a certificate"), ("approx-test", "run the approximation samples")):
        sp = sub.add_parser(name, help=hlp)
        common(sp)
        sp.add_argument("--samples", type=int, default=None, help=f"number of samples (default {DEFAULT_SAMPLES})")
        sp.add_argument("--seed", type=int, default=None, help=f"random seed (default {DEFAULT_SEED})")
        if name == "certify":
            sp.add_argument("--resolution-bound", type=int, default=None, help=f"resolution bound (default {DEFAULT_BOUND})")
            sp.add_argument("--out", default=None, help="certificate output path")
            sp.add_argument("--tamper", choices=["drop-injective"], default=None, help="negative control: corrupt M")
    return p


def _options(args, f: InstanceFile) -> dict:
    o = dict(f.options)
    for key in ("depth", "samples", "seed", "resolution_bound"):
        val = getattr(args, key, None)
        if val is not None:
            o[key] = val
    if o["depth"] is not None and o["depth"] < 1:
        raise SchemaError("--depth", "must be positive")
    if o["samples"] < 1:
        raise SchemaError("--samples", "must be positive")
    if o["resolution_bound"] < 1:
        raise SchemaError("--resolution-bound", "must be positive")
    return o


def _instance(f: InstanceFile, o: dict):
    return build_instance(f.quiver, f.spec, depth=o["depth"], slice_power=f.slice_power)


def _cmd_validate(args, f, o, out) -> int:
    try:
        inst = _instance(f, o)
    except RepDimError as exc:
        out.write(f"invalid: {exc.code}: {exc.message}\n")
        return 1
    out.write(f"type: {dynkin_label(f.quiver) or 'non-Dynkin'}\n")
    out.write("tilting: yes; T and tau T have no projective summands\n")
    out.write(f"slice power: {inst.slice_power}\n")
    out.write(f"knitted depth: {inst.depth}\n")
    out.write(f"dim B: {inst.b.dim}\n")
    out.write("valid\n")
    return 0


def _cmd_knit(args, f, o, out) -> int:
    depth = o["depth"]
    if depth is None:
        try:
            depth = _instance(f, o).depth
        except RepDimError as exc:
            out.write(f"cannot choose a depth: {exc.code}: {exc.message}\n")
            return 1
    comp = knit(f.quiver, depth)
    for cell in comp.listing():
        out.write(f"{cell.power}\t{cell.vertex}\t{cell.label}\t{tuple(cell.rep.dim_vector)}\n")
    return 0


def _cmd_certify(args, f, o, out) -> int:
    params = {"samples": o["samples"], "seed": o["seed"], "resolution_bound": o["resolution_bound"], "tamper": args.tamper}
    try:
        inst = _instance(f, o)
    except RepDimError as exc:
        cert = _failed_certificate(f, exc, params)
    else:
        cert = certify(inst, o["samples"], o["seed"], o["resolution_bound"], tamper=args.tamper)
    if args.out:
        write_atomic(args.out, json.dumps(certificate_file(cert, f), indent=2, sort_keys=True) + "\n")
    out.write(emit_report(cert))
    return 0 if cert.verdict == "success" else 1


def _cmd_approx(args, f, o, out) -> int:
    try:
        inst = _instance(f, o)
        gen = build_generator(inst)
        samples = sample_torsion_modules(inst, o["samples"], o["seed"])
    except RepDimError as exc:
        out.write(f"{exc.code}: {exc.message}\n")
        return 1
    out.write("#\tsample\torigin\tdim X\tdim K'\tdim E'\tdim Y\texact\tonto\n")
    ok = True
    for i, s in enumerate(samples):
        try:
            a = approx_sequence(inst, gen, s)
        except RepDimError as exc:
            out.write(f"{i}\t{s.label}\t{s.origin}\t{tuple(s.rep.dim_vector)}\t{exc.code}\n")
            ok = False
            continue
        ok = ok and a.passed
        onto = all(a.surjective.values())
        out.write(
            f"{i}\t{s.label}\t{s.origin}\t{tuple(s.rep.dim_vector)}\t{a.dim_k}\t{a.dim_e}\t{a.dim_y}\t"
            f"{'yes' if a.exact else 'no'}\t{'yes' if onto else 'no'}\n"
        )
    out.write("all samples passed\n" if ok else "some samples failed\n")
    return 0 if ok else 1


_COMMANDS = {"validate": _cmd_validate, "knit": _cmd_knit, "certify": _cmd_certify, "approx-test": _cmd_approx}


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    """Run one command and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        f = parse_instance(args.instance)
        o = _options(args, f)
    except SchemaError as exc:
        err.write(f"schema error in {exc.field}: {exc.reason}\n")
        return 2
    except OSError as exc:
        err.write(f"cannot read {args.instance}: {exc.strerror or exc}\n")
        return 2
    return _COMMANDS[args.command](args, f, o, out)


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
