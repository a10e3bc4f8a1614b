"""Command-line frontend.

Every subcommand prints one machine-readable payload to stdout (json by
default, csv or md on request) and a single version line to stderr, so that
identical invocations produce byte-identical stdout.  Exit codes: 0 ok,
1 verification failed, 2 bad input, 3 inconclusive positivity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .bdf import classify
from .cycnum import totient
from .families import torus_families
from .fixtures import (FixtureError, check_against_whitelist,
                       compare_with_fixture, verify_table7)
from .intlattice import InfiniteCokernelError
from .orbits import CharacterTuple, all_tuples, galois_orbits, orbit_of
from .polarization import (DegenerateFormError, InconclusiveError,
                           LambdaVector, build_form,
                           gram_and_posdef, parse_lambda_shorthand,
                           search_lambda, split_blocks, structure_from_lambda)
from .torus import (ComplexStructure, LatticeAutomorphism, PairChoice,
                    fixed_locus, is_rigid, moduli_dimension)

OK, VERIFICATION_FAILED, BAD_INPUT, INCONCLUSIVE = 0, 1, 2, 3


def _result(command: str, inputs: dict, results, flags=(), status: str = "ok") -> dict:
    return {
        "schema": 1,
        "command": command,
        "inputs": inputs,
        "results": results,
        "flags": [f.as_dict() for f in flags],
        "status": status,
    }


def _flatten_rows(results) -> list[dict]:
    if isinstance(results, list) and all(isinstance(r, dict) for r in results):
        return results
    if isinstance(results, dict):
        for key in ("rows", "orbits", "flags"):
            val = results.get(key)
            if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
                return val
        return [results]
    return [{"value": results}]


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    rows = _flatten_rows(payload["results"])
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            keys = sorted({k for r in rows for k in r})
            writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: r.get(k, "") for k in keys})
        return buf.getvalue().rstrip("\n")
    if fmt == "md":
        if not rows:
            return "(empty)"
        keys = sorted({k for r in rows for k in r})
        out = ["| " + " | ".join(keys) + " |",
               "| " + " | ".join("---" for _ in keys) + " |"]
        for r in rows:
            out.append("| " + " | ".join(str(r.get(k, "")) for k in keys) + " |")
        return "\n".join(out)
    raise ValueError(f"unknown format {fmt!r}")


def _emit(payload: dict, fmt: str) -> None:
    print(_render(payload, fmt))


def _group_json(g) -> list[int]:
    return list(g.invariant_factors)


# -- subcommand handlers -----------------------------------------------------

def cmd_orbits(args) -> tuple[dict, int]:
    orbs = galois_orbits(args.m)
    results = {
        "m": args.m,
        "orbit_count": len(orbs),
        "orbits": [{"representative": list(o.representative.residues), "size": len(o)}
                   for o in orbs.orbits],
    }
    return _result("orbits", {"m": args.m}, results), OK


def cmd_tuples(args) -> tuple[dict, int]:
    tuples = sorted(t.residues for t in all_tuples(args.m))
    results = {"m": args.m, "count": len(tuples), "tuples": [list(t) for t in tuples]}
    return _result("tuples", {"m": args.m}, results), OK


def cmd_fix(args) -> tuple[dict, int]:
    aut = LatticeAutomorphism.from_module([(args.m, args.rank)])
    group = fixed_locus(aut)
    results = {"m": args.m, "rank": args.rank, "fixed_locus": _group_json(group),
               "display": str(group)}
    return _result("fix", {"m": args.m, "rank": args.rank}, results), OK


def cmd_moduli(args) -> tuple[dict, int]:
    if args.m == 2:
        if args.s is None:
            raise ValueError("m=2 needs --s (half dimension of the -1 part)")
        cs = ComplexStructure(pairs=(), s=args.s)
    else:
        nus = [int(x) for x in args.nu.split(",")] if args.nu else []
        npairs = totient(args.m) // 2
        if len(nus) != npairs:
            raise ValueError(f"m={args.m} has {npairs} conjugate pairs; got {len(nus)} nu values")
        cs = ComplexStructure(pairs=tuple(
            PairChoice(k=args.m, r=args.rank, nu=v, pair_index=i) for i, v in enumerate(nus)))
    p = moduli_dimension(cs)
    results = {"m": args.m, "moduli": p, "rigid": is_rigid(cs)}
    inputs = {"m": args.m, "rank": args.rank, "nu": args.nu, "s": args.s}
    return _result("moduli", inputs, results), OK


def _parse_lambda_arg(m: int, text: str) -> LambdaVector:
    return LambdaVector(m, parse_lambda_shorthand(text))


def cmd_polarize(args) -> tuple[dict, int]:
    lv = _parse_lambda_arg(args.m, args.lam)
    form = build_form(lv)
    orbit = tuple(int(x) for x in args.orbit.split(","))
    cs = structure_from_lambda(lv, bits=args.bits, max_bits=args.max_bits)
    in_orbit = orbit_of(CharacterTuple(args.m, cs.primitive)) == \
        orbit_of(CharacterTuple(args.m, orbit))
    report = gram_and_posdef(form, cs, bits=args.bits, max_bits=args.max_bits)
    results = {
        "m": args.m,
        "lambda": list(lv.lambdas),
        "invariant": report.invariant,
        "riemann1": report.riemann1,
        "posdef": report.posdef,
        "orbit_match": in_orbit,
        "chosen": list(report.chosen),
        "type": list(report.type) if report.type else None,
        "principal": report.principal,
        "gram_diagonal": [[str(g.lo), str(g.hi)] for g in report.gram_diagonal],
    }
    ok = report.invariant and report.riemann1 and report.posdef == "yes" and in_orbit
    if report.posdef == "inconclusive":
        status, code = "inconclusive", INCONCLUSIVE
    elif ok:
        status, code = "ok", OK
    else:
        status, code = "verification_failed", VERIFICATION_FAILED
    inputs = {"m": args.m, "orbit": args.orbit, "lambda": args.lam}
    return _result("polarize", inputs, results, status=status), code


def cmd_search_lambda(args) -> tuple[dict, int]:
    orbit = tuple(int(x) for x in args.orbit.split(","))
    found = search_lambda(args.m, orbit, bound=args.bound, limit=args.limit)
    results = {"m": args.m, "orbit": list(orbit), "bound": args.bound,
               "count": len(found), "vectors": [list(lv.lambdas) for lv in found]}
    inputs = {"m": args.m, "orbit": args.orbit, "bound": args.bound}
    return _result("search-lambda", inputs, results), OK


def cmd_blocks(args) -> tuple[dict, int]:
    lv = _parse_lambda_arg(args.m, args.lam)
    blocks = split_blocks(build_form(lv))
    results = {"m": args.m, "blocks": {str(k): B.data for k, B in sorted(blocks.items())}}
    return _result("blocks", {"m": args.m, "lambda": args.lam}, results), OK


def cmd_classify(args) -> tuple[dict, int]:
    fams = classify(args.n)
    rows = []
    for fam in fams:
        rows.append({
            "m": fam.m,
            "b1": fam.b1_label(),
            "b1_dim": fam.b1_dim,
            "b2": fam.b2_display(),
            "b2_dim": fam.b2_dim,
            "types": sorted(list(v.types) for v in fam.variants),
            "translation_options": [_group_json(g) for g in fam.tr_options],
            "moduli": fam.moduli,
        })
    results = {"n": args.n, "rows": rows, "row_count": len(rows),
               "family_count": sum(f.family_count for f in fams)}
    return _result("classify", {"n": args.n}, results), OK


def cmd_verify(args) -> tuple[dict, int]:
    suite = args.suite
    if suite == "table7":
        rows = verify_table7(bits=args.bits, max_bits=args.max_bits)
        flags = [f for r in rows for f in r.flags]
        results = {"suite": suite, "rows": [{
            "case": r.case, "m": r.m, "status": r.status, "detail": r.detail,
            "chosen": list(r.chosen) if r.chosen else None,
            "recovered": [list(v) for v in r.recovered],
        } for r in rows]}
        hard_fail = any(r.status == "fail" for r in rows)
        inconclusive = any(r.status == "inconclusive" for r in rows)
        unparseable_unrecovered = any(r.status == "unparseable" and not r.recovered
                                      for r in rows)
    else:
        flags = compare_with_fixture(suite)
        results = {"suite": suite, "flags": [f.as_dict() for f in flags]}
        hard_fail = False
        inconclusive = False
        unparseable_unrecovered = False
    unexpected, missing = check_against_whitelist(flags)
    results["unexpected_flags"] = sorted(map(list, unexpected))
    results["whitelisted_not_raised"] = sorted(
        list(k) for k in missing if k[0] == suite or (suite == "propositions" and k[0] == "propositions"))
    clean = not unexpected and not hard_fail and not unparseable_unrecovered
    if inconclusive:
        status, code = "inconclusive", INCONCLUSIVE
    elif clean:
        status, code = "ok", OK
    else:
        status, code = "verification_failed", VERIFICATION_FAILED
    return _result("verify", {"suite": suite}, results, flags=flags, status=status), code


def cmd_families(args) -> tuple[dict, int]:
    fams = torus_families(args.n)
    rows = [{"m": f.m, "family": f.display(), "types": list(f.types),
             "fix": _group_json(f.fix()), "p": f.moduli} for f in fams]
    results = {"n": args.n, "count": len(rows), "rows": rows}
    return _result("families", {"n": args.n}, results), OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cyctori", description=__doc__)
    fmt_parent = argparse.ArgumentParser(add_help=False)
    fmt_parent.add_argument("--format", choices=("json", "csv", "md"), default="json")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[fmt_parent], **kwargs)
        p.set_defaults(func=fn)
        return p

    p = add("orbits", cmd_orbits, help="Galois orbits of primitive character tuples")
    p.add_argument("--m", type=int, required=True)

    p = add("tuples", cmd_tuples, help="all character selections for a modulus")
    p.add_argument("--m", type=int, required=True)

    p = add("fix", cmd_fix, help="fixed locus of a primary module automorphism")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rank", type=int, default=1)

    p = add("moduli", cmd_moduli, help="moduli count of a Hodge structure")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--nu", type=str, default="")
    p.add_argument("--s", type=int, default=None)

    p = add("polarize", cmd_polarize, help="verify a lambda-form against an orbit")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--orbit", type=str, required=True)
    p.add_argument("--lambda", dest="lam", type=str, required=True)
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--max-bits", type=int, default=4096)

    p = add("search-lambda", cmd_search_lambda, help="search lambda-vectors for an orbit")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--orbit", type=str, required=True)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--limit", type=int, default=None)

    p = add("blocks", cmd_blocks, help="cyclotomic block decomposition of a form")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=str, required=True)

    p = add("classify", cmd_classify, help="split quotient candidates of dimension n")
    p.add_argument("--n", type=int, required=True)

    p = add("families", cmd_families, help="torus families of dimension n")
    p.add_argument("--n", type=int, required=True)

    p = add("verify", cmd_verify, help="diff computed tables against the fixtures")
    p.add_argument("--suite", required=True,
                   choices=("table1", "table2", "table3", "table4", "table5",
                            "table6", "table7", "propositions"))
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--max-bits", type=int, default=4096)

    return top


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code not in (0, None) else 0
    print(f"cyctori {__version__}", file=sys.stderr)
    try:
        payload, code = args.func(args)
    except (ValueError, FixtureError, InfiniteCokernelError) as exc:
        payload = _result(args.subcommand, {}, {"error": str(exc)}, status="bad_input")
        code = BAD_INPUT
    except DegenerateFormError as exc:
        payload = _result(args.subcommand, {}, {"error": str(exc)}, status="verification_failed")
        code = VERIFICATION_FAILED
    except InconclusiveError as exc:
        payload = _result(args.subcommand, {}, {"error": str(exc)}, status="inconclusive")
        code = INCONCLUSIVE
    _emit(payload, args.format)
    return code


def main() -> None:
    sys.exit(run())
