"""The ``xmodlab`` command line.

Exit codes: 0 when everything passes, 1 for a failed check or an invalid or
non-perfect input, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .actions import Action, coinvariants, displacement
from .coset import DEFAULT_COSET_CAP
from .errors import (NotPerfect, ParseError, UnknownSuite, ValidationError, XModLabError)
from .perm import PermGroup, abelian_invariants
from .suites import SUITES, SuiteContext, canonical_json, run_suite, timing_json
from .tensor import tensor, uce
from .xmod import XModL, is_perfect

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _load(path: str, kinds: tuple[type, ...]):
    from .catalog import load_single
    _, name, obj = load_single(path)
    if not isinstance(obj, kinds):
        wanted = " or ".join(k.__name__ for k in kinds)
        raise ParseError(path, 0, f"expected a file defining a {wanted}")
    return name, obj


def _gens(sub) -> str:
    return ", ".join(str(g) for g in sub.gens) or "()"


def cmd_validate(args) -> int:
    name, obj = _load(args.file, (PermGroup, Action, XModL))
    if isinstance(obj, PermGroup):
        print(f"ok: group {name} of order {obj.order}")
    elif isinstance(obj, Action):
        print(f"ok: action {name} of {obj.L.name} (order {obj.L.order}) "
              f"on {obj.M.name} (order {obj.M.order})")
    else:
        print(f"ok: crossed module {name}: {obj.top.name} (order {obj.top.order}) "
              f"-> {obj.base.name} (order {obj.base.order})")
    return EXIT_OK


def cmd_commutator(args) -> int:
    name, xm = _load(args.xm, (XModL,))
    d = xm.displacement
    print(f"{name}: [L,M] has order {d.order} in M of order {xm.top.order}")
    print(f"generators: {_gens(d)}")
    return EXIT_OK


def cmd_coinvariants(args) -> int:
    name, obj = _load(args.target, (Action, XModL))
    a = obj.action if isinstance(obj, XModL) else obj
    c = coinvariants(a)
    print(f"{name}: M/[L,M] has order {c.C.order} "
          f"([L,M] of order {displacement(a).order})")
    if c.C.is_abelian:
        inv = abelian_invariants(c.C)
        print("invariants: " + (" x ".join(f"Z{n}" for n in inv) if inv else "trivial"))
    return EXIT_OK


def cmd_perfect(args) -> int:
    _, xm = _load(args.xm, (XModL,))
    print(f"perfect: {'true' if is_perfect(xm) else 'false'}")
    return EXIT_OK


def _print_report(report: dict) -> None:
    for key, value in report.items():
        if isinstance(value, bool):
            value = str(value).lower()
        print(f"{key}: {value}")


def cmd_tensor(args) -> int:
    _, xm = _load(args.xm, (XModL,))
    _print_report(tensor(xm, coset_cap=args.cap).report)
    return EXIT_OK


def cmd_uce(args) -> int:
    _, xm = _load(args.xm, (XModL,))
    u = uce(xm, coset_cap=args.cap)
    _print_report(u.tensor.report)
    print(f"universal central extension kernel order: {u.f.kernel.order}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .catalog import load_catalog
    cat = load_catalog(args.catalog)
    ids = list(SUITES) if args.suite == "all" else [args.suite]
    for s in ids:
        if s not in SUITES:
            raise UnknownSuite(f"unknown suite {s!r}; known: all, {', '.join(SUITES)}")
    ctx = SuiteContext(cat, coset_cap=args.cap)
    reports = []
    for s in ids:
        r = run_suite(cat, s, ctx)
        reports.append(r)
        c = r.summary
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {s}: {c['PASS']} passed, {c['FAIL']} failed, "
              f"{c['SKIPPED']} skipped", flush=True)
        for rec in r.records:
            if rec.status == "FAIL":
                print(f"  FAIL {rec.check} [{rec.inputs}]: {rec.witness}")
    if args.json:
        path = Path(args.json)
        path.write_text(canonical_json(reports), encoding="utf-8")
        path.with_name(path.stem + ".timings.json").write_text(timing_json(reports),
                                                               encoding="utf-8")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="xmodlab", description="Crossed modules of groups over a fixed base.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="parse and validate one catalog file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("commutator", help="the subgroup [L,M] of a crossed module")
    s.add_argument("xm")
    s.set_defaults(fn=cmd_commutator)

    s = sub.add_parser("coinvariants", help="M/[L,M] for an action or crossed module")
    s.add_argument("target")
    s.set_defaults(fn=cmd_coinvariants)

    s = sub.add_parser("perfect", help="whether [L,M] = M")
    s.add_argument("xm")
    s.set_defaults(fn=cmd_perfect)

    for cmd, fn, text in (("tensor", cmd_tensor, "enumerate the tensor product L(x)M"),
                          ("uce", cmd_uce, "universal central extension of a perfect entry")):
        s = sub.add_parser(cmd, help=text)
        s.add_argument("xm")
        s.add_argument("--cap", type=int, default=DEFAULT_COSET_CAP,
                       help="coset enumeration cap (default %(default)s)")
        s.set_defaults(fn=fn)

    s = sub.add_parser("verify", help="run verification suites over a catalog")
    s.add_argument("--suite", default="all", help="suite id or 'all' (default)")
    s.add_argument("--catalog", required=True, help="catalog directory")
    s.add_argument("--json", help="write the canonical JSON report here; timings go to "
                   "a sidecar file beside it")
    s.add_argument("--cap", type=int, default=DEFAULT_COSET_CAP,
                   help="coset enumeration cap (default %(default)s)")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, NotPerfect) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except XModLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
