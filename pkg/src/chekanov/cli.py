"""Command-line front end.

Exit codes: 0 success or verified, 1 mathematical negative (for example a
witness that fails), 2 unknown at the completion cap, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import cert
from .charalg import (
    DEFAULT_CAP,
    NONTRIVIAL,
    TRIVIAL,
    UNKNOWN,
    derive_zero_generators,
    search_unit_witness,
    simplify_presentation,
    verify_unit_witness,
)
from .dga import BASEPOINT_POLICIES, DEFAULT_BASEPOINT, check_d_squared, compute_differential
from .freealg import ParseError, parse_poly, ring_from_name
from .front import FrontError, KnotRecord, classical_invariants, get_knot, load_knot_file
from .reference import M10_161_EXTRA_IDEAL, TABLES, reference_dga

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

# Extra ideals used by `charalg --quotient` for built-in knots.
BUILTIN_QUOTIENTS = {"m10_161": M10_161_EXTRA_IDEAL}


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    knot: str
    invariants: dict = field(default_factory=dict)
    generators: int = 0
    checks: dict = field(default_factory=dict)
    verdict: str | None = None
    witness: str | None = None
    certificate: dict | None = None
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def _knot(args) -> KnotRecord:
    if args.file and args.knot:
        raise InputError("give either --knot or --file, not both")
    try:
        if args.file:
            return load_knot_file(args.file)
        return get_knot(args.knot or "m10_161")
    except FrontError as exc:
        raise InputError(str(exc)) from None


def _ring(args):
    try:
        return ring_from_name(args.ring)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _dga(args, knot: KnotRecord, ring=None):
    ring = ring or _ring(args)
    try:
        return compute_differential(knot.front(), ring, args.basepoint)
    except FrontError as exc:
        raise InputError(str(exc)) from None


def _dga_for_algebra(args, knot: KnotRecord):
    """Tabulated DGA for built-in knots when requested, else computed."""
    if getattr(args, "table", False):
        if knot.name not in TABLES:
            raise InputError(f"no tabulated differential for {knot.name!r}")
        return reference_dga(knot.name)
    return _dga(args, knot)


def cmd_invariants(args, report: RunReport) -> int:
    knot = _knot(args)
    front = knot.front()
    try:
        inv = classical_invariants(front)
    except FrontError as exc:
        raise InputError(str(exc)) from None
    report.invariants = {"tb": inv.tb, "r": inv.r, "writhe": inv.writhe}
    report.generators = front.n_generators
    print(f"knot: {knot.name}")
    print(f"strands: {front.strands}  crossings: {len(front.crossings)}  right cusps: {len(front.right_cusps)}")
    print(f"generators: {front.n_generators}")
    print(f"tb = {inv.tb}  r = {inv.r}  (top left cusp traversed downward)")
    return EXIT_OK


def cmd_dga(args, report: RunReport) -> int:
    knot = _knot(args)
    dga = _dga_for_algebra(args, knot)
    report.generators = len(dga.diff)
    sys.stdout.write(dga.render())
    if args.gradings:
        mod = f" (mod {dga.modulus})" if dga.modulus else ""
        print(f"gradings{mod}: " + ", ".join(f"x_{g}:{dga.grading[g]}" for g in dga.generators))
    return EXIT_OK


def cmd_d2check(args, report: RunReport) -> int:
    knot = _knot(args)
    dga = _dga_for_algebra(args, knot)
    rep = check_d_squared(dga)
    report.generators = rep.checked
    report.checks["d_squared"] = rep.ok
    report.checks["homogeneous"] = dga.is_homogeneous()
    for g, p in rep.failures.items():
        print(f"d d x_{g} = {p}")
    print(f"d^2 = 0 on {rep.checked - len(rep.failures)}/{rep.checked} generators; "
          f"homogeneous: {dga.is_homogeneous()}")
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def _parse(text: str, ring):
    try:
        return parse_poly(text, ring)
    except ParseError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from None


def cmd_charalg(args, report: RunReport) -> int:
    knot = _knot(args)
    dga = _dga_for_algebra(args, knot)
    extra = [_parse(e, dga.to_z2().ring) for e in args.extra]
    if args.quotient:
        if knot.name not in BUILTIN_QUOTIENTS:
            raise InputError(f"no built-in quotient ideal for {knot.name!r}")
        extra += [_parse(e, dga.to_z2().ring) for e in BUILTIN_QUOTIENTS[knot.name]]
    zeros = derive_zero_generators(dga)
    pres = simplify_presentation(dga, extra)
    report.generators = len(pres.generators)
    report.checks["zeros"] = sorted(zeros)
    print("forced zeros: " + (", ".join(f"x_{g}" for g in sorted(zeros)) or "none"))
    sys.stdout.write(pres.render())
    return EXIT_OK


def cmd_witness(args, report: RunReport) -> int:
    knot = _knot(args)
    if args.action == "verify":
        if not args.element:
            raise InputError("witness verify needs --element")
        dga = _dga_for_algebra(args, knot)
        element = _parse(args.element, dga.ring)
        t0 = time.perf_counter()
        ok = verify_unit_witness(dga, element)
        report.timings["verify"] = time.perf_counter() - t0
        report.verdict = TRIVIAL if ok else None
        report.witness = element.render()
        print("verified: d(element) = 1" if ok else f"not a witness: d(element) = {dga.apply(element)}")
        return EXIT_OK if ok else EXIT_NEGATIVE
    dga = _dga_for_algebra(args, knot)
    t0 = time.perf_counter()
    res = search_unit_witness(dga, cap=args.cap)
    report.timings["search"] = time.perf_counter() - t0
    report.verdict = res.verdict
    report.checks.update(cancellations=res.cancellations, rules=res.rules,
                         completion_finished=res.complete, laurent_lift=res.laurent_lift)
    print(f"cancelled pairs: {res.cancellations}; reduced generators: {res.reduced_generators}")
    print(f"completion rules: {res.rules}; finished below cap {args.cap}: {res.complete}")
    for n in res.notes:
        print(f"note: {n}")
    if res.found:
        report.witness = res.witness.render()
        print(f"verdict: {TRIVIAL} (witness with {len(res.witness.element)} terms, verified over Z/2 at t = 1)")
        if args.show:
            print(report.witness)
        return EXIT_OK
    print(f"verdict: {UNKNOWN}")
    return EXIT_UNKNOWN


def cmd_certify(args, report: RunReport) -> int:
    knot = _knot(args)
    dga = _dga_for_algebra(args, knot)
    certificate = None
    if knot.name == "m10_161" and not args.augmentation:
        certificate = cert.representation_certificate(knot.name, dga, cert.m10_161_representation(args.sample))
    else:
        try:
            augs = cert.augmentation_search(dga, graded=not args.ungraded)
        except cert.SearchAborted as exc:
            print(f"augmentation search aborted: {exc}")
            augs = []
        print(f"augmentations found: {len(augs)}")
        if augs:
            certificate = cert.augmentation_certificate(knot.name, dga, augs[0])
    if certificate is not None and certificate.verdict == NONTRIVIAL:
        report.verdict = NONTRIVIAL
        report.certificate = certificate.to_dict()
        print(certificate.to_json())
        return EXIT_OK
    res = search_unit_witness(dga, cap=args.cap)
    report.verdict = res.verdict
    if res.found:
        report.witness = res.witness.render()
        print(f"verdict: {TRIVIAL} (verified witness with {len(res.witness.element)} terms)")
        return EXIT_NEGATIVE
    print(f"verdict: {UNKNOWN}")
    return EXIT_UNKNOWN


def cmd_suite(args, report: RunReport) -> int:
    from .suite import run_all

    results = run_all()
    for r in results:
        print(r.line())
        report.checks[str(r.number)] = {"name": r.name, "passed": r.passed, "detail": r.detail}
        report.timings[str(r.number)] = r.seconds
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--knot", help="built-in knot name (m10_161, m10_139, unknot)")
    common.add_argument("--file", help="knot file: JSON {name, strands, word, notes}")
    common.add_argument("--ring", default="z2", help="coefficient ring: z2 or laurent")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="completion degree cap")
    common.add_argument("--basepoint", default=DEFAULT_BASEPOINT, choices=BASEPOINT_POLICIES)
    common.add_argument("--report", help="write a JSON run report to this path")
    common.add_argument("--table", action="store_true",
                        help="use the tabulated differential of a built-in knot")

    p = argparse.ArgumentParser(prog="chekanov", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common], help="classical invariants")
    s = sub.add_parser("dga", parents=[common], help="print the differential")
    s.add_argument("--gradings", action="store_true", help="also print gradings")
    sub.add_parser("d2check", parents=[common], help="check d^2 = 0 and homogeneity")
    s = sub.add_parser("charalg", parents=[common], help="simplified characteristic algebra")
    s.add_argument("--extra", action="append", default=[], help="extra ideal element (repeatable)")
    s.add_argument("--quotient", action="store_true", help="add the built-in extra ideal")
    s = sub.add_parser("witness", parents=[common], help="verify or search for d(w) = 1")
    s.add_argument("action", choices=("verify", "search"))
    s.add_argument("--element", help="element in the canonical grammar")
    s.add_argument("--show", action="store_true", help="print a found witness")
    s = sub.add_parser("certify", parents=[common], help="nontriviality certificate")
    s.add_argument("--sample", type=int, default=cert.DEFAULT_SAMPLE, help="basis vectors to test")
    s.add_argument("--augmentation", action="store_true", help="use augmentation search only")
    s.add_argument("--ungraded", action="store_true", help="ungraded augmentation search")
    sub.add_parser("paper-suite", parents=[common], help="run every built-in check")
    return p


COMMANDS = {
    "invariants": cmd_invariants,
    "dga": cmd_dga,
    "d2check": cmd_d2check,
    "charalg": cmd_charalg,
    "witness": cmd_witness,
    "certify": cmd_certify,
    "paper-suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    name = args.file or args.knot or ("suite" if args.command == "paper-suite" else "m10_161")
    report = RunReport(args.command, str(name))
    t0 = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    report.timings["total"] = time.perf_counter() - t0
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
