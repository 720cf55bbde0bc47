"""Command-line entry point: ``sdsets <command> [options]``.

Every command prints a JSON envelope ``{command, input, mode, result, timing}``
(or a plain table with ``--table``).  Exit codes: 0 success / certified,
1 usage or input error, 2 hypothesis failure, 3 numerically inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import bounds as bounds_mod
from . import monomials
from .certificate import CERTIFIED, HYPOTHESIS_FAILED, full_certificate
from .clique import BACKEND, DEFAULT_BUDGET
from .config import CATALOG_EXAMPLES, builtin, catalog_names, profile, resolve_gram, validate
from .errors import (AmbiguousProfile, HypothesisViolated, NumericInconclusive, SDSetError)
from .search import CandidateFamily, generate_family, search_s_distance

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n\n{self.format_usage()}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact",
                      help="exact arithmetic (default)")
    mode.add_argument("--float", dest="mode", action="store_const", const="float",
                      help="tolerance-based float arithmetic")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     help="JSON envelope (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table",
                     help="aligned text table")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    p.set_defaults(mode="exact", fmt="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sdsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list N/E/M(n, s) exponent vectors")
    p.add_argument("--kind", choices=["N", "E", "M"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("bounds", parents=[common], help="bound values at (n, s) or for a profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, help="number of distinct inner products")
    p.add_argument("--profile", metavar="FILE",
                   help="Gram JSON file or catalog:NAME; bounds whose hypotheses it meets")

    p = sub.add_parser("verify", parents=[common], help="validate a Gram matrix and profile it")
    p.add_argument("--gram", required=True, help="Gram JSON file or catalog:NAME")

    p = sub.add_parser("certify", parents=[common], help="run the polynomial-method certificate")
    p.add_argument("--gram", required=True, help="Gram JSON file or catalog:NAME")

    p = sub.add_parser("search", parents=[common], help="search a family for s-distance sets")
    p.add_argument("--family", required=True,
                   help="signed_basis(n), normalized_pm1(n), edge_midpoints_simplex(n) or file:PATH")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="node-expansion limit per clique search")
    p.add_argument("--allow-antipodal", action="store_true",
                   help="permit inner product -1 in allowed sets")
    p.add_argument("--backend", choices=["python", "cython"], default=None,
                   help=f"clique kernel (default: {BACKEND})")

    sub.add_parser("catalog", parents=[common], help="list built-in configurations")
    return parser


# -- commands -------------------------------------------------------------------

def _gram(ref: str, mode: str):
    g = resolve_gram(ref)
    return g.to_float() if mode == "float" and not g.is_float else g


def cmd_enumerate(args):
    members = monomials.enumerate_set(args.kind, args.n, args.s)
    result = {"kind": args.kind, "n": args.n, "s": args.s, "count": len(members),
              "formula_count": monomials.count(args.kind, args.n, args.s),
              "members": [monomials.format_exponent(a) for a in members]}
    rows = [[monomials.format_exponent(a)] for a in members]
    return result, (["exponent"], rows), EXIT_OK


def _bounds_table(reports):
    return (["theorem", "value", "status", "hypotheses"],
            [[b.theorem_id, str(b.value), b.status, "; ".join(b.hypotheses_used)]
             for b in reports])


def cmd_bounds(args):
    if args.profile:
        g = resolve_gram(args.profile)
        if args.mode == "float":
            g = g.to_float()
        reports = bounds_mod.applicable_bounds(profile(g), args.n)
    else:
        if args.s is None:
            raise UsageError("bounds: give --s or --profile")
        reports = bounds_mod.bounds_for(args.n, args.s)
    return [b.to_json() for b in reports], _bounds_table(reports), EXIT_OK


def cmd_verify(args):
    g = _gram(args.gram, args.mode)
    report = validate(g)
    result = {"n": g.n, "r": g.r, "scalar_kind": g.kind, "validation": report.to_json()}
    rows = [["valid", str(report.valid)], ["psd", str(report.psd)], ["rank", str(report.rank)]]
    if report.valid:
        prof = profile(g)
        result["profile"] = prof.to_json()
        result["bounds"] = [b.to_json() for b in bounds_mod.applicable_bounds(prof, g.n)]
        rows += [["s", str(prof.s)],
                 ["inner_products", ", ".join(result["profile"]["inner_products"])],
                 ["antipodal_type", str(result["profile"]["antipodal_type"])]]
    else:
        rows.append(["witness", "; ".join(report.witness)])
    return result, (["field", "value"], rows), EXIT_OK if report.valid else EXIT_HYPOTHESIS


def cmd_certify(args):
    g = _gram(args.gram, args.mode)
    rep = full_certificate(g, args.mode)
    code = {CERTIFIED: EXIT_OK, HYPOTHESIS_FAILED: EXIT_HYPOTHESIS}.get(rep.verdict, EXIT_INCONCLUSIVE)
    data = rep.to_json()
    keys = ["verdict", "r", "n", "s", "bound", "rank", "eval_matrix_ok", "determinant",
            "support_ok", "eval_consistent", "frame", "failure_witness"]
    return data, (["field", "value"], [[k, str(data[k])] for k in keys]), code


def cmd_search(args):
    fam = generate_family(args.family)
    if args.mode == "float":
        fam = CandidateFamily(fam.gram.to_float(), fam.n, fam.source, fam.vectors)
    res = search_s_distance(fam, args.s, args.budget, args.allow_antipodal, args.backend)
    data = res.to_json()
    rows = [["size", str(res.size)], ["witness", " ".join(map(str, res.witness))],
            ["optimal", str(res.optimal)], ["allowed", ", ".join(data["allowed"])],
            ["dgs_bound", str(res.dgs_bound)]]
    rows += [[f"bound:{b.theorem_id}", str(b.value)] for b in res.bounds]
    return data, (["field", "value"], rows), EXIT_OK


def cmd_catalog(args):
    entries = []
    for name in CATALOG_EXAMPLES:
        g = builtin(name)
        entries.append({"name": name, "n": g.n, "r": g.r, "profile": profile(g).to_json()})
    result = {"families": catalog_names(), "examples": entries}
    rows = [[e["name"], str(e["n"]), str(e["r"]), str(e["profile"]["s"]),
             ", ".join(e["profile"]["inner_products"])] for e in entries]
    return result, (["name", "n", "r", "s", "inner_products"], rows), EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "bounds": cmd_bounds, "verify": cmd_verify,
            "certify": cmd_certify, "search": cmd_search, "catalog": cmd_catalog}


# -- output -------------------------------------------------------------------------

def render_table(header, rows) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _input_echo(args) -> dict:
    skip = {"command", "fmt", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit_error(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        start = time.perf_counter()
        result, table, code = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return EXIT_USAGE
    except HypothesisViolated as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_HYPOTHESIS
    except (NumericInconclusive, AmbiguousProfile) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_INCONCLUSIVE
    except (SDSetError, OSError, ValueError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_USAGE

    if args.fmt == "table":
        text = render_table(*table)
    else:
        envelope = {"command": args.command, "input": _input_echo(args), "mode": args.mode,
                    "result": result, "timing": {"seconds": round(elapsed, 6)}}
        text = json.dumps(envelope, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
