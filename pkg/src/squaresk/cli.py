"""Command-line front end.

Exit codes: 0 all checks pass, 1 a violation was found, 2 structural or input error,
3 a bounded search could not decide.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .cat import FinCategory, StructuralError, ValidationReport, validate_category
from .constructible import NotLocallyClosedError, cf_complex, exactness_report, homology_dims
from .covering import CovCategory, build_cmin, check_C_conditions, is_assembler, validate_covering
from .k0 import k0_compare_cmin, k0_invariants, k0_presentation_assembler, k0_presentation_squares
from .polygons import area_respects_k0
from .report import FAIL, INCONCLUSIVE, PASS, AxiomReport, Verdict
from .semilinear import SemilinearSet, euler_char
from .simplicial import check_functor_identities, check_roundtrip_transformations, check_simplicial_identities
from .squares import SquaresCategory, check_complement_axioms, validate_squares_category

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}


class InputError(Exception):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


def _load(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(raw), hashlib.sha256(raw).hexdigest()
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _validation_verdict(name: str, rep: ValidationReport) -> Verdict:
    if rep.structural:
        raise InputError("; ".join(rep.structural))
    v = Verdict(name, checked=1)
    if rep.violations:
        v.fail(rep.witnesses[0] if rep.witnesses else None, rep.violations[0])
    return v


def _squares_or_cmin(data, bound: int) -> SquaresCategory:
    if "families" in data:
        return build_cmin(CovCategory.from_json(data), bound)
    return SquaresCategory.from_json(data)


def _set(data) -> SemilinearSet:
    try:
        return SemilinearSet.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed semilinear set: {exc!r}") from exc


# -- subcommands: each returns (verdicts, extra fields, human lines) ------------------------------


def cmd_validate_cat(a, data):
    v = _validation_verdict("category", validate_category(FinCategory.from_json(data)))
    return [v], {}, None


def cmd_check_squares(a, data):
    S = SquaresCategory.from_json(data)
    out = [_validation_verdict("squares_category", validate_squares_category(S))]
    if S.complements is not None:
        out += list(check_complement_axioms(S))
    return out, {}, None


def cmd_check_assembler(a, data):
    A = CovCategory.from_json(data)
    out = [_validation_verdict("covering_families", validate_covering(A))]
    out += list(is_assembler(A)) + list(check_C_conditions(A))
    return out, {}, None


def cmd_build_cmin(a, data):
    S = build_cmin(CovCategory.from_json(data), a.bound)
    out = [_validation_verdict("squares_category", validate_squares_category(S))]
    out += list(check_complement_axioms(S))
    extra = {"objects": len(S.ambient.objects), "distinguished": len(S.distinguished)}
    if a.out:
        Path(a.out).write_text(json.dumps(S.to_json(), sort_keys=True) + "\n")
    return out, extra, None


def cmd_k0(a, data):
    if "families" in data:
        p = k0_presentation_assembler(CovCategory.from_json(data))
    else:
        p = k0_presentation_squares(SquaresCategory.from_json(data))
    inv = k0_invariants(p)
    return [Verdict("k0", checked=1)], {"invariants": inv.to_json()}, [str(inv)]


def cmd_k0_compare(a, data):
    r = k0_compare_cmin(CovCategory.from_json(data), a.bound)
    v = Verdict("k0_compare", status=r.status, checked=1, witness=r.witness, detail=r.detail)
    extra = {k: x.to_json() for k, x in (("assembler", r.assembler), ("cmin", r.cmin)) if x is not None}
    line = "isomorphic" if r.ok else f"{r.status}: {r.detail}"
    return [v], extra, [line]


def cmd_simplicial(a, data):
    S = _squares_or_cmin(data, a.bound)
    out = []
    for n in range(a.n + 1):
        out += list(check_functor_identities(S, n))
        out += list(check_roundtrip_transformations(S, n))
        out.append(check_simplicial_identities(S, n))
    return out, {}, None


def cmd_chi(a, data):
    chi = euler_char(_set(data))
    return [Verdict("chi", checked=1)], {"chi": chi}, [str(chi)]


def cmd_homology(a, data):
    X = _set(data)
    try:
        dims = homology_dims(cf_complex(X))
    except NotLocallyClosedError as exc:
        w = {"point": [str(c) for c in exc.witness], "frontier_point": [str(c) for c in exc.frontier_point]}
        raise InputError(str(exc), w) from exc
    chi = sum((-1) ** i * d for i, d in enumerate(dims))
    line = " ".join(f"H{i}={d}" for i, d in enumerate(dims)) + f"  chi={chi}"
    return [Verdict("homology", checked=1)], {"dims": dims, "chi": chi}, [line]


def cmd_exactness(a, data):
    try:
        X, C = _set(data["X"]), _set(data["C"])
    except (KeyError, TypeError) as exc:
        raise InputError("exactness input needs keys X and C") from exc
    return [exactness_report(X, C)], {}, None


def cmd_polygon_k0(a, data):
    rep: AxiomReport = area_respects_k0(seed=a.seed, trials=a.trials)
    return list(rep), {"trials": a.trials}, None


COMMANDS = {
    "validate-cat": (cmd_validate_cat, "validate a finite category table"),
    "check-squares": (cmd_check_squares, "check a squares category with complements, (A1)-(A8)"),
    "check-assembler": (cmd_check_assembler, "check assembler axioms and (C1)-(C5)"),
    "build-cmin": (cmd_build_cmin, "build C^min from an assembler and check (A1)-(A8)"),
    "k0": (cmd_k0, "K0 invariants of an assembler or squares category"),
    "k0-compare": (cmd_k0_compare, "compare K0 of an assembler with K0 of its C^min"),
    "simplicial-roundtrip": (cmd_simplicial, "functor identities and round-trips up to --n"),
    "chi": (cmd_chi, "Euler characteristic of a semilinear set"),
    "homology": (cmd_homology, "F2 homology of constructible functions on a locally closed set"),
    "exactness": (cmd_exactness, "open/closed exact sequence for {X, C}"),
    "polygon-k0": (cmd_polygon_k0, "random cover and square checks of the area invariant"),
}
NO_INPUT = {"polygon-k0"}


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda x: argparse.SUPPRESS) if suppress else (lambda x: x)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable report")
    p.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
    p.add_argument("--bound", type=int, default=d(2), help="multiset size bound for C^min")
    p.add_argument("--timing", action="store_true", default=d(False), help="fill in elapsed_ms")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="squaresk", description=__doc__.splitlines()[0])
    _global_flags(p, False)
    sub = p.add_subparsers(dest="command", metavar="command")
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        _global_flags(sp, True)
        if name not in NO_INPUT:
            sp.add_argument("input", help="JSON fixture")
        if name == "simplicial-roundtrip":
            sp.add_argument("--n", type=int, default=2)
        if name == "polygon-k0":
            sp.add_argument("--trials", type=int, default=100)
        if name == "build-cmin":
            sp.add_argument("--out", help="write the C^min squares category here")
    return p


def _status(verdicts) -> str:
    states = {v.status for v in verdicts}
    if FAIL in states:
        return FAIL
    if INCONCLUSIVE in states:
        return INCONCLUSIVE
    return PASS


def _emit(a, report: dict, lines, out) -> None:
    if a.json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    if lines is not None:
        for line in lines:
            out.write(line + "\n")
        return
    for v in report["verdicts"]:
        tail = f"  {v['detail']}" if v.get("detail") else ""
        out.write(f"{v['name']}: {v['status']} ({v.get('checked', 0)} checked){tail}\n")
        if v["status"] == FAIL and "witness" in v:
            out.write(f"  witness: {json.dumps(v['witness'], sort_keys=True)}\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if a.command is None:
        parser.print_usage(sys.stderr)
        return 2
    t0 = time.perf_counter()
    report = {"command": a.command, "seed": a.seed, "elapsed_ms": None}
    fn = COMMANDS[a.command][0]
    data = None
    try:
        if a.command not in NO_INPUT:
            data, digest = _load(a.input)
            report["input_sha256"] = digest
        verdicts, extra, lines = fn(a, data)
    except (InputError, StructuralError, ValueError, KeyError, TypeError) as exc:
        report["verdicts"] = [{"name": "input", "status": "error", "detail": str(exc)}]
        report["status"] = "error"
        if getattr(exc, "witness", None) is not None:
            report["verdicts"][0]["witness"] = exc.witness
        if a.timing:
            report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        if a.json:
            sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
        else:
            sys.stderr.write(f"error: {exc}\n")
            if getattr(exc, "witness", None) is not None:
                sys.stderr.write(f"witness: {json.dumps(exc.witness, sort_keys=True)}\n")
        return 2
    status = _status(verdicts)
    report["verdicts"] = [v.to_json() for v in verdicts]
    report["status"] = status
    report.update(extra)
    if status == FAIL:
        # enough to rerun the failing check: argv plus the input document itself
        report["replay"] = {"argv": argv, "input": data}
    if a.timing:
        report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    _emit(a, report, lines if status == PASS else None, sys.stdout)
    return EXIT[status]


if __name__ == "__main__":
    raise SystemExit(main())
