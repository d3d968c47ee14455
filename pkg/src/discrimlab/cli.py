"""Command-line front end.

Every subcommand prints one JSON document on stdout and a short summary on
stderr.  Exit codes: 0 for an affirmative result, 1 for a well-formed
negative one, 2 for errors (with ``{"error": {...}}`` on stdout).
Index lists are 1-based, e.g. ``--T "1,2,3;1,4,5"``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import catalog, discriminantal as disc, lattice, nvg
from .arrangement import find_nongeneric_subset
from .errors import DiscrimlabError, OnlyCentral, PreconditionError
from .exact_linalg import format_rational
from .io import (
    arrangement_json,
    load_arrangement,
    load_translate,
    parse_family,
    parse_index_list,
    raw_arrangement,
    read_json,
    write_json,
)
from .svg import emit_svg

log = logging.getLogger("discrimlab")


@dataclass
class Report:
    command: str
    inputs: dict
    result: object
    exit_code: int = 0
    summary: str = ""
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise PreconditionError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="discrimlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_arr(sp, required=True):
        sp.add_argument("--arr", required=required, help="arrangement JSON file")
        return sp

    g = sub.add_parser("gen", help="seeded random arrangement")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--bound", type=int, default=100)
    g.add_argument("--out")

    e = sub.add_parser("example", help="named example arrangement")
    e.add_argument("name", choices=["crapo", "falk", "braid"])
    e.add_argument("--n", type=int, default=4, help="hyperplane count for braid")
    e.add_argument("--out")

    with_arr(sub.add_parser("check-generic", help="validate genericity"))

    dn = with_arr(sub.add_parser("disc-normal", help="normal of D_L"))
    dn.add_argument("--L", help="k+1 indices; all subsets when omitted")

    rk = with_arr(sub.add_parser("rank", help="rank and simplicity of an intersection"))
    rk.add_argument("--T", help="family; defaults to the T stored in --arr")

    cs = with_arr(sub.add_parser("census", help="rank-2 flats and multiplicities"))
    cs.add_argument("--detail", action="store_true")

    fn = with_arr(sub.add_parser("find-nvg", help="search simple non-very generic intersections"))
    fn.add_argument("--max-r", type=int, default=4)
    fn.add_argument("--jobs", type=int, default=1)

    vg = with_arr(sub.add_parser("very-generic", help="scan all simple families up to max-r"))
    vg.add_argument("--max-r", type=int, default=4)

    ce = with_arr(sub.add_parser("certify", help="certify (r,s)-dependency"))
    ce.add_argument("--T")
    ce.add_argument("--l", type=int, required=True)
    ce.add_argument("--Sl", required=True)

    ls = with_arr(sub.add_parser("ls-check", help="3-set dependency test for n=3s, k=2s-1"))
    ls.add_argument("--T")

    wi = with_arr(sub.add_parser("witness", help="non-central translate on every D_L of T"))
    wi.add_argument("--T")
    wi.add_argument("--out")

    sv = with_arr(sub.add_parser("svg", help="draw a translate of a line arrangement"))
    sv.add_argument("--translate", help="translate JSON; witness of --T when omitted")
    sv.add_argument("--T")
    sv.add_argument("--out", required=True)
    return p


def _family(args, stored):
    if getattr(args, "T", None):
        return parse_family(args.T)
    if stored is None:
        raise PreconditionError("no --T given and the arrangement file stores none")
    return tuple(tuple(L) for L in stored)


def _tset_json(T):
    return [list(L) for L in T]


def _cmd_gen(args):
    a = catalog.random_arrangement(args.n, args.k, args.seed, args.bound)
    out = arrangement_json(a)
    if args.out:
        write_json(out, args.out)
    return out, 0, f"random arrangement n={a.n} k={a.k} seed={args.seed}"


def _cmd_example(args):
    a, T = catalog.example(args.name, args.n)
    out = arrangement_json(a, T)
    if args.out:
        write_json(out, args.out)
    return out, 0, f"{args.name}: n={a.n} k={a.k}"


def _cmd_check_generic(args):
    k, normals = raw_arrangement(read_json(args.arr))
    zero = [i for i, v in enumerate(normals, start=1) if not any(v)]
    if any(len(v) != k for v in normals):
        raise PreconditionError("normals must all have length k")
    if not 1 <= k < len(normals):
        raise PreconditionError("need 1 <= k < n")
    bad = None if zero else find_nongeneric_subset(k, normals)
    generic = not zero and bad is None
    out = {
        "generic": generic,
        "zero_normal": zero[0] if zero else None,
        "offending": list(bad) if bad else None,
    }
    return out, 0 if generic else 1, "generic" if generic else "not generic"


def _cmd_disc_normal(args):
    a, _ = load_arrangement(args.arr)
    if args.L:
        normals = [disc.disc_normal(a, parse_index_list(args.L))]
    else:
        normals = disc.all_disc_normals(a)
    out = [{"L": list(dn.L), "coeffs": [format_rational(c) for c in dn.coeffs]} for dn in normals]
    return (out[0] if args.L else out), 0, f"{len(out)} normal(s)"


def _cmd_rank(args):
    a, stored = load_arrangement(args.arr)
    T = _family(args, stored)
    flat = disc.flat_of(a, T)
    fam = lattice.set_family(T, a.n, a.k)
    ath = lattice.athanasiadis_condition(fam)
    simple = None
    if len(T) >= 2 and all(len(L) == a.k + 1 for L in T):
        simple = disc.is_simple(a, T)
    out = {
        "T": _tset_json(T),
        "multiplicity": len(T),
        "rank": flat.rank,
        "is_simple": simple,
        "is_r_set": nvg.is_r_set(T) if len(T) >= 2 else False,
        "athanasiadis_condition": ath,
        "expected_rank": lattice.expected_rank(fam) if ath else None,
        "transversal_rank": lattice.expected_rank(fam, strict=False),
        "kernel_dim": flat.subspace.dim,
    }
    return out, 0, f"multiplicity {len(T)}, rank {flat.rank}, simple {simple}"


def _cmd_census(args):
    a, _ = load_arrangement(args.arr)
    entries = disc.rank2_census(a)
    out = {"summary": disc.census_summary(entries)}
    if args.detail:
        out["flats"] = [
            {
                "multiplicity": e.multiplicity,
                "normal_span": [[format_rational(x) for x in v] for v in e.normal_span.basis],
                "members": _tset_json(e.members),
            }
            for e in entries
        ]
    return out, 0, f"{len(entries)} rank-2 flats"


def _cmd_find_nvg(args):
    a, _ = load_arrangement(args.arr)
    found = nvg.find_simple_nvg(a, args.max_r, jobs=args.jobs)
    out = [f.to_json() for f in found]
    return out, 0 if found else 1, f"{len(found)} simple non-very generic intersection(s)"


def _cmd_very_generic(args):
    a, _ = load_arrangement(args.arr)
    v = lattice.very_generic_upto(a, args.max_r)
    return v.to_json(), 0 if v.verdict else 1, "defect found" if v.defect_found else "no simple defect"


def _cmd_certify(args):
    a, stored = load_arrangement(args.arr)
    T = _family(args, stored)
    ok, cert = nvg.certify_rs_dependency(a, T, args.l, parse_family(args.Sl))
    if ok:
        return cert.to_json(), 0, f"({len(T)},{cert.s})-dependent"
    out = {"dependent": False, "T": _tset_json(T), "l": args.l, "S_l": _tset_json(parse_family(args.Sl))}
    return out, 1, "not dependent"


def _cmd_ls_check(args):
    a, stored = load_arrangement(args.arr)
    T = _family(args, stored)
    dep = nvg.ls_dependency_check(a, T)
    return {"T": _tset_json(T), "dependent": dep}, 0 if dep else 1, f"dependent: {dep}"


def _cmd_witness(args):
    a, stored = load_arrangement(args.arr)
    T = _family(args, stored)
    try:
        t = nvg.witness_translate(a, T)
    except OnlyCentral:
        return {"t": None, "reason": "only_central"}, 1, "only central translates"
    out = t.to_json()
    try:
        kt = nvg.kt_configuration(a, t, T)
        out["points"] = [[format_rational(x) for x in P] for P in kt.points]
        out["strict"] = kt.is_strict
    except DiscrimlabError as exc:
        out["points"] = None
        out["strict"] = False
        log.info("no K_T configuration: %s", exc)
    if args.out:
        write_json(out, args.out)
    return out, 0, "non-central witness found"


def _cmd_svg(args):
    a, stored = load_arrangement(args.arr)
    if a.k != 2:
        raise PreconditionError("svg needs a line arrangement (k = 2)")
    T = _family(args, stored) if (args.T or stored) else None
    if args.translate:
        t = load_translate(a, args.translate)
    elif T is not None:
        t = nvg.witness_translate(a, T)
    else:
        raise PreconditionError("svg needs --translate or a family to take the witness of")
    emit_svg(a, t, T, args.out)
    out = {"svg": str(args.out), "lines": a.n, "vertices": len(T) if T else None}
    return out, 0, f"wrote {args.out}"


_COMMANDS = {
    "gen": _cmd_gen,
    "example": _cmd_example,
    "check-generic": _cmd_check_generic,
    "disc-normal": _cmd_disc_normal,
    "rank": _cmd_rank,
    "census": _cmd_census,
    "find-nvg": _cmd_find_nvg,
    "very-generic": _cmd_very_generic,
    "certify": _cmd_certify,
    "ls-check": _cmd_ls_check,
    "witness": _cmd_witness,
    "svg": _cmd_svg,
}


def run(argv=None) -> Report:
    """Parse and execute one command without touching stdout."""
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else ""
    try:
        args = build_parser().parse_args(argv)
        inputs = {k: v for k, v in vars(args).items() if k != "command"}
        result, code, summary = _COMMANDS[args.command](args)
        return Report(args.command, inputs, result, code, summary)
    except (DiscrimlabError, OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        for attr in ("subset", "index", "member"):
            if hasattr(exc, attr):
                err["error"][attr] = list(getattr(exc, attr)) if attr != "index" else exc.index
        return Report(command, {"argv": argv}, err, 2, f"error: {exc}")


def main(argv=None) -> int:
    level = os.environ.get("DISCRIMLAB_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)
    report = run(argv)
    json.dump(report.result, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if report.summary:
        print(f"{report.command}: {report.summary}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
