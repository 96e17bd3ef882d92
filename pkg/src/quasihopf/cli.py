"""Command-line entry points: ``verify``, ``smash``, ``decompose``, ``roundtrip``.

Exit status is 0 when every check passes, 1 on a mathematical violation and
2 on I/O, usage or schema errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path
from typing import Callable

from .algebra import BasedAlgebra, check_algebra_morphism, verify_associative_unital
from .fileformat import (FormatError, Morphism, Partial, dump_comodule_algebra,
                         dump_module_algebra, dump_morphism, dump_quasi_hopf, load,
                         write_document)
from .fields import DEFAULT_FIELD_ENV
from .linalg import LinearMap, NotInvertible
from .quasi_hopf import (QuasiHopfAlgebra, compute_pq, is_hopf_specialization,
                         normalize_alpha_beta, verify_lemma3, verify_pq_identities, verify_quasi_bialgebra,
                         verify_quasi_hopf)
from .report import PreconditionError, VerificationError, VerificationReport
from .representations import (ComoduleAlgebra, ModuleAlgebra, bv_construction,
                              check_comodule_algebra_morphism, check_module_algebra_morphism,
                              lemma1_check, regular_comodule, smash_product,
                              verify_comodule_algebra, verify_module_algebra)
from .structure_theorem import decompose, recovery_isomorphism, roundtrip

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2
_TAG = re.compile(r"\([a-z]+\d*\)")
MAX_SHOWN = 5


# ------------------------------------------------------------ verifier suites


def verify_quasi_hopf_suite(Hq: QuasiHopfAlgebra) -> VerificationReport:
    """Every quasi-Hopf check: axioms, normalization, p_R/q_R identities, (lema3)."""
    report = VerificationReport()
    report.extend(verify_quasi_bialgebra(Hq))
    report.extend(verify_quasi_hopf(Hq))
    try:
        pq = compute_pq(Hq)
    except NotInvertible:
        report.fail("S-inv", ("singular",))
        return report
    report.extend(verify_pq_identities(Hq, pq))
    report.extend(verify_lemma3(Hq, pq))
    report.info["hopf_specialization"] = is_hopf_specialization(Hq)
    return report


def verify_object(obj) -> VerificationReport:
    """Full verifier suite for a loaded document object."""
    if isinstance(obj, QuasiHopfAlgebra):
        return verify_quasi_hopf_suite(obj)
    if isinstance(obj, ModuleAlgebra):
        report = VerificationReport().extend(verify_quasi_hopf_suite(obj.H), prefix="H:")
        report.extend(verify_associative_unital(obj.A))
        report.extend(lemma1_check(obj))
        return report
    if isinstance(obj, ComoduleAlgebra):
        report = VerificationReport().extend(verify_quasi_hopf_suite(obj.H), prefix="H:")
        report.extend(verify_associative_unital(obj.B))
        report.extend(verify_comodule_algebra(obj))
        return report
    if isinstance(obj, BasedAlgebra):
        return verify_associative_unital(obj)
    if isinstance(obj, Morphism):
        return verify_morphism(obj)
    raise FormatError(f"cannot verify a {type(obj).__name__}")


def _as_comodule(x):
    if isinstance(x, QuasiHopfAlgebra):
        return regular_comodule(x)
    if isinstance(x, ComoduleAlgebra):
        return x
    raise FormatError("comodule_algebra morphism needs quasi_hopf or comodule_algebra ends")


def _as_algebra(x) -> BasedAlgebra:
    for attr in ("B", "A", "H"):
        inner = getattr(x, attr, None)
        if isinstance(inner, BasedAlgebra):
            return inner
    if isinstance(x, BasedAlgebra):
        return x
    raise FormatError(f"{type(x).__name__} has no underlying algebra")


def verify_morphism(mor: Morphism) -> VerificationReport:
    report = VerificationReport()
    src, dst = mor.source, mor.target
    if src is None or dst is None:
        report.info["property_checked"] = False
        return report
    for x in (src, dst):
        if isinstance(x, (Partial, Morphism)):
            raise FormatError("morphism ends must be complete algebra documents")
    report.extend(verify_object(src), prefix="source:")
    report.extend(verify_object(dst), prefix="target:")
    f, prop = mor.matrix, mor.property
    a, b = _as_algebra(src), _as_algebra(dst)
    if f.shape != (b.dim, a.dim):
        raise FormatError(f"matrix shape {f.shape} does not fit {a.dim} -> {b.dim}")
    if prop == "algebra":
        report.extend(check_algebra_morphism(f, a, b))
    elif prop == "comodule_algebra":
        s, t = _as_comodule(src), _as_comodule(dst)
        if s.H is not t.H:
            raise FormatError("morphism ends use different quasi-Hopf algebras")
        report.extend(check_comodule_algebra_morphism(f, s, t))
    elif prop == "module_algebra":
        if not (isinstance(src, ModuleAlgebra) and isinstance(dst, ModuleAlgebra)):
            raise FormatError("module_algebra morphism needs module_algebra ends")
        report.extend(check_module_algebra_morphism(f, src, dst))
    report.info["property_checked"] = True
    return report


# ------------------------------------------------------------ reports


def _plain(x):
    """JSON-friendly rendering of witnesses, coordinates and info values."""
    if isinstance(x, LinearMap):
        return [[str(c) for c in row] for row in x.rows]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    return str(x)


def axiom_tag(check_id: str) -> str:
    m = _TAG.search(check_id)
    return m.group(0) if m else check_id.rsplit(":", 1)[-1]


class Run:
    """Accumulates checks, info and per-stage timings for one command."""

    def __init__(self, command: str):
        self.command = command
        self.report = VerificationReport()
        self.info: dict = {}
        self.timings: dict[str, float] = {}
        self.error: str | None = None

    def stage(self, name: str, fn: Callable, *args, prefix: str = "", **kwargs):
        start = time.perf_counter()
        try:
            result = fn(*args, **kwargs)
        finally:
            self.timings[name] = round(time.perf_counter() - start, 4)
        if isinstance(result, VerificationReport):
            self.report.extend(result, prefix=prefix)
        return result

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.report.ok else "fail"

    def checks(self) -> list[dict]:
        by_axiom: dict[str, list] = {}
        for v in self.report.sorted_violations():
            by_axiom.setdefault(v.axiom, []).append(v)
        out = []
        for cid in self.report.checked:
            vs = by_axiom.get(cid, [])
            out.append({
                "id": cid,
                "tag": axiom_tag(cid),
                "result": "fail" if vs else "pass",
                "witnesses": [{"witness": _plain(v.witness), "lhs": _plain(v.lhs),
                               "rhs": _plain(v.rhs)} for v in vs],
            })
        return out

    def document(self, timings: bool = True) -> dict:
        doc = {"command": self.command, "status": self.status}
        if self.error is not None:
            doc["error"] = self.error
        doc["checks"] = self.checks()
        doc["info"] = {k: _plain(v) for k, v in sorted(self.info.items())}
        if timings:
            doc["timings"] = self.timings
        return doc

    def human(self) -> str:
        lines = []
        for c in self.checks():
            if c["result"] == "pass":
                lines.append(f"PASS  {c['id']}")
                continue
            lines.append(f"FAIL  {c['id']}  ({len(c['witnesses'])} witnesses)")
            for w in c["witnesses"][:MAX_SHOWN]:
                lines.append(f"      at {w['witness']}: lhs={w['lhs']} rhs={w['rhs']}")
            if len(c["witnesses"]) > MAX_SHOWN:
                lines.append(f"      ... {len(c['witnesses']) - MAX_SHOWN} more")
        for k, v in sorted(self.info.items()):
            if not isinstance(v, LinearMap):
                lines.append(f"info  {k} = {_plain(v)}")
        if self.error is not None:
            lines.append(f"error: {self.error}")
        n_fail = len(self.report.failed_axioms)
        lines.append(f"status: {self.status} ({len(self.report.checked)} checks, {n_fail} failed)")
        return "\n".join(lines)


# ------------------------------------------------------------ commands


def _normalized(Hq: QuasiHopfAlgebra, run: Run) -> QuasiHopfAlgebra:
    """Rescale α, β to ε(α) = ε(β) = 1 when ε(α)ε(β) = 1; otherwise leave it to the verifier."""
    try:
        out = normalize_alpha_beta(Hq)
    except ValueError:
        return Hq
    if out is not Hq:
        run.info["normalized_alpha_beta"] = True
    return out


def _load_hopf(path, field, run: Run) -> QuasiHopfAlgebra:
    Hq = load(path, field)
    if not isinstance(Hq, QuasiHopfAlgebra):
        raise FormatError(f"{path}: expected a quasi_hopf document")
    return _normalized(Hq, run)


def _load_bound(path, field, Hq, kind: type):
    obj = load(path, field, hopf=Hq)
    if isinstance(obj, Partial):
        raise FormatError(f"{path}: no embedded quasi-Hopf algebra; pass -H")
    if not isinstance(obj, kind):
        raise FormatError(f"{path}: expected a {kind.__name__} document")
    return obj


def _gate(run: Run, what: str) -> None:
    if not run.report.ok:
        raise VerificationError(f"{what} failed verification", run.report)


def cmd_verify(args, run: Run) -> None:
    Hq = _load_hopf(args.hopf, args.field, run) if args.hopf else None
    obj = run.stage("load", load, args.file, args.field, hopf=Hq)
    if isinstance(obj, Partial):
        raise FormatError(f"{args.file}: no embedded quasi-Hopf algebra; pass -H")
    if isinstance(obj, QuasiHopfAlgebra):
        obj = _normalized(obj, run)
    run.info["kind"] = type(obj).__name__
    run.stage("verify", verify_object, obj)
    if isinstance(obj, QuasiHopfAlgebra):
        run.info["dim"] = obj.dim


def cmd_smash(args, run: Run) -> None:
    Hq = run.stage("load H", _load_hopf, args.hopf, args.field, run)
    MA = run.stage("load A", _load_bound, args.algebra, args.field, Hq, ModuleAlgebra)
    run.stage("verify H", verify_quasi_hopf_suite, Hq, prefix="H:")
    run.stage("verify A", verify_module_algebra, MA, prefix="A:")
    _gate(run, "input")
    CA, j = run.stage("smash", smash_product, MA)
    run.stage("verify A#H", verify_comodule_algebra, CA, prefix="A#H:")
    run.stage("verify j", check_comodule_algebra_morphism, j, regular_comodule(Hq), CA,
              prefix="j:")
    _gate(run, "smash product")
    run.info["dim"] = CA.B.dim
    out = _outdir(args.out)
    ca_doc = dump_comodule_algebra(CA)
    write_document(ca_doc, out / "smash.ca")
    write_document(dump_morphism(j, "comodule_algebra", name="j",
                                 source=dump_quasi_hopf(Hq), target=ca_doc), out / "j.mor")


def cmd_decompose(args, run: Run) -> None:
    Hq = run.stage("load H", _load_hopf, args.hopf, args.field, run)
    CA = run.stage("load B", _load_bound, args.comodule, args.field, Hq, ComoduleAlgebra)
    v = run.stage("load v", load, args.v, args.field)
    if not isinstance(v, Morphism):
        raise FormatError(f"{args.v}: expected a morphism document")
    if v.matrix.shape != (CA.B.dim, Hq.dim):
        raise FormatError(f"v has shape {v.matrix.shape}, expected {(CA.B.dim, Hq.dim)}")
    A0 = _load_bound(args.expect, args.field, Hq, ModuleAlgebra) if args.expect else None
    run.stage("verify H", verify_quasi_hopf_suite, Hq, prefix="H:")
    run.stage("verify B algebra", verify_associative_unital, CA.B, prefix="B:")
    run.stage("verify B", verify_comodule_algebra, CA, prefix="B:")
    _gate(run, "input")
    try:
        D = run.stage("decompose", decompose, CA, v.matrix)
    except PreconditionError as exc:
        run.report.extend(exc.report, prefix="precondition v:")
        raise VerificationError(str(exc), run.report) from exc
    run.report.extend(D.report)
    run.info["dim_A"] = D.A.A.dim
    run.info["dim_B"] = CA.B.dim
    if A0 is not None:
        _, rec = run.stage("compare A₀", recovery_isomorphism, D, A0, prefix="A≅A₀:")
        run.info["A_isomorphic_to_expected"] = rec.ok
        _gate(run, "recovered algebra")
    out = _outdir(args.out)
    a_doc = dump_module_algebra(D.A)
    write_document(a_doc, out / "A.ma")
    write_document(dump_morphism(D.Psi, "comodule_algebra", name="Psi",
                                 source=dump_comodule_algebra(D.smash),
                                 target=dump_comodule_algebra(CA)), out / "psi.mor")
    Bv = bv_construction(CA.B, v.matrix, Hq, verify=False)
    write_document(dump_morphism(D.theta, "module_algebra", name="theta",
                                 source=a_doc, target=dump_module_algebra(Bv)),
                   out / "theta.mor")


def cmd_roundtrip(args, run: Run) -> None:
    Hq = run.stage("load H", _load_hopf, args.hopf, args.field, run)
    MA = run.stage("load A", _load_bound, args.algebra, args.field, Hq, ModuleAlgebra)
    run.stage("verify H", verify_quasi_hopf_suite, Hq, prefix="H:")
    run.stage("verify A", verify_module_algebra, MA, prefix="A:")
    _gate(run, "input")
    rep = run.stage("roundtrip", roundtrip, MA)
    run.info.update(rep.info)


def _outdir(path) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise FormatError(f"cannot create {out}: {exc}") from exc
    return out


# ------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None,
                        help=f"'rational' or 'gf:<p>'; overrides the file and ${DEFAULT_FIELD_ENV}")
    common.add_argument("--report", metavar="PATH", help="write a JSON report")
    common.add_argument("--no-timings", action="store_true",
                        help="omit timings from the JSON report")
    common.add_argument("-q", "--quiet", action="store_true", help="print only the status line")

    parser = argparse.ArgumentParser(prog="quasihopf",
                                     description="Exact quasi-Hopf algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run every verifier for a file")
    p.add_argument("file")
    p.add_argument("-H", dest="hopf", help="quasi-Hopf algebra for module/comodule files")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("smash", parents=[common], help="build A#H and j: H -> A#H")
    p.add_argument("-a", dest="algebra", required=True, help="module algebra file")
    p.add_argument("-H", dest="hopf", required=True, help="quasi-Hopf algebra file")
    p.add_argument("-o", dest="out", required=True, help="output directory")
    p.set_defaults(handler=cmd_smash)

    p = sub.add_parser("decompose", parents=[common], help="split B as A#H along v")
    p.add_argument("-B", dest="comodule", required=True, help="comodule algebra file")
    p.add_argument("-H", dest="hopf", required=True, help="quasi-Hopf algebra file")
    p.add_argument("-v", dest="v", required=True, help="morphism file for v: H -> B")
    p.add_argument("-o", dest="out", required=True, help="output directory")
    p.add_argument("-a", "--expect", dest="expect",
                   help="module algebra A0 with B = A0#H; asserts A is isomorphic to it")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("roundtrip", parents=[common], help="decompose A#H and recover A")
    p.add_argument("-a", dest="algebra", required=True, help="module algebra file")
    p.add_argument("-H", dest="hopf", required=True, help="quasi-Hopf algebra file")
    p.set_defaults(handler=cmd_roundtrip)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args.command)
    code = EXIT_OK
    try:
        args.handler(args, run)
        if not run.report.ok:
            code = EXIT_VIOLATION
    except (VerificationError, NotInvertible) as exc:
        if isinstance(exc, VerificationError) and exc.report is not run.report:
            run.report.extend(exc.report)
        if isinstance(exc, NotInvertible):
            run.report.fail("invertibility", (str(exc),))
        code = EXIT_VIOLATION
    except (FormatError, OSError, ValueError) as exc:
        run.error = str(exc)
        code = EXIT_ERROR

    print(run.human() if not args.quiet else f"status: {run.status}")
    if args.report:
        try:
            Path(args.report).write_text(
                json.dumps(run.document(timings=not args.no_timings), ensure_ascii=False,
                           indent=1) + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
