"""Command-line front end: ``cubekit [global options] <verb> ...``.

Exit codes: 0 success, 1 domain error (bad input, failed search), 2 usage error.
Every command is deterministic; ``--jobs`` only changes how fast a search runs.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census as census_mod
from . import dehn, surgery
from .canonical import BudgetExceeded, are_equivalent, canonical_form
from .cubulation import Cubulation, CubulationError, parse, to_dot, validate
from .cycles import invariant_report
from .fixtures import write_fixtures
from .lattice import LatticeError

DOMAIN_ERRORS = (
    CubulationError,
    BudgetExceeded,
    census_mod.FalsificationError,
    surgery.SurgeryError,
    surgery.FalsificationError,
    dehn.FillingError,
    LatticeError,
    ValueError,
    OSError,
)


class Output:
    def __init__(self, fmt: str, stdout, stderr):
        self.fmt = fmt
        self.out = stdout
        self.err = stderr

    def line(self, *cols) -> None:
        self.out.write("\t".join(str(c) for c in cols) + "\n")

    def json(self, obj) -> None:
        self.out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read(path: str, **kw) -> Cubulation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CubulationError(f"{path}: {exc.strerror}") from None
    try:
        return parse(text, **kw)
    except CubulationError as exc:
        raise CubulationError(f"{path}: {exc}") from None


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _emit_cubulation(c: Cubulation, args, o: Output) -> None:
    if args.out:
        Path(args.out).write_text(c.serialize(), encoding="utf-8", newline="\n")
    else:
        o.out.write(c.serialize())


def _emit_log(rows, args, o: Output) -> None:
    text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    if args.log:
        Path(args.log).write_text(text, encoding="utf-8", newline="\n")
    elif args.out:
        o.out.write(text)
    else:
        o.err.write(text)


# ---------------------------------------------------------------- verbs

def cmd_validate(args, o: Output) -> int:
    c = _read(args.file, check=False)
    problems = validate(c)
    if o.fmt == "json":
        o.json({"file": args.file, "valid": not problems, "diagnostics": problems, "n": c.n})
    else:
        for p in problems:
            o.line("diagnostic", p)
        o.line("valid" if not problems else "invalid", f"n={c.n}", f"pairings={len(c.pairings)}", f"open={len(c.open_facets)}")
    return 1 if problems else 0


def cmd_analyze(args, o: Output) -> int:
    c = _read(args.file)
    rep = invariant_report(c)
    q = rep.volume_coefficient
    vol_exact = f"{q.numerator}/{q.denominator}*pi^2" if q.denominator != 1 else f"{q.numerator}*pi^2"
    if o.fmt == "json":
        o.json({
            "cusps": [
                {"cycle_len": cu.h, "monodromy_class": cu.monodromy_class, "shape": cu.shape, "section_volume": cu.section_volume}
                for cu in rep.cusps
            ],
            "n": rep.n, "k": rep.k, "chi": rep.chi,
            "volume": vol_exact, "volume_decimal": f"{rep.volume:.10f}",
            "total_section_volume": rep.total_section_volume, "orientable": rep.orientable,
        })
        return 0
    o.line("#cycle_len", "monodromy_class", "shape", "section_volume")
    for cu in rep.cusps:
        o.line(cu.h, cu.monodromy_class, cu.shape or "-", cu.section_volume)
    o.line("#n", "k", "chi", "volume", "total_section_volume", "orientable")
    o.line(rep.n, rep.k, rep.chi, f"{vol_exact} = {rep.volume:.10f}", rep.total_section_volume, _flag(rep.orientable))
    return 0


def _spec(args) -> census_mod.SearchSpec:
    prof = None
    if args.monodromy:
        prof = tuple(x for item in args.monodromy for x in item.split(",") if x)
    return census_mod.SearchSpec(
        n=args.n,
        orientable_only=args.orientable,
        matching_pattern=args.matching,
        cusp_count=args.cusps,
        monodromy_profile=prof,
        limit=args.limit,
        budget=args.budget,
        jobs=args.jobs,
    )


def cmd_search(args, o: Output) -> int:
    entries = list(census_mod.enumerate(_spec(args)))
    entries.sort(key=lambda e: e.canonical)
    if o.fmt == "json":
        for e in entries:
            o.json({"canonical_form": e.canonical, "n": e.n, "orientable": e.orientable,
                    "cusp_profile": [list(x) for x in e.cusp_profile]})
    else:
        o.out.write(census_mod.CENSUS_HEADER + "\n#" + census_mod.CENSUS_COLUMNS + "\n")
        for e in entries:
            o.out.write(e.row() + "\n")
    if not entries:
        o.err.write("no cubulation matches the search\n")
        return 1
    return 0


def cmd_census(args, o: Output) -> int:
    entries = list(census_mod.enumerate(_spec(args)))
    census_mod.census_write(entries, args.out)
    o.line("entries", len(entries), args.out)
    return 0


def cmd_flower(args, o: Output) -> int:
    c = _read(args.file)
    new, cert = surgery.insert_flower(c, args.edge)
    _emit_cubulation(new, args, o)
    _emit_log([cert.as_dict()], args, o)
    return 0


def cmd_split(args, o: Output) -> int:
    c = _read(args.file)
    new, rows = surgery.insert_splitter_logged(c, args.edge, args.count)
    _emit_cubulation(new, args, o)
    _emit_log(rows, args, o)
    return 0


def cmd_reduce(args, o: Output) -> int:
    c = _read(args.file)
    new, rows = surgery.reduce_to_k(c, args.cusps)
    _emit_cubulation(new, args, o)
    _emit_log(rows, args, o)
    return 0


def cmd_cover(args, o: Output) -> int:
    c = _read(args.file)
    edge = surgery.default_unroll_edge(c) if args.edge is None else surgery.resolve_edge(c, args.edge)
    new = surgery.cyclic_unroll(c, edge, args.n)
    _emit_cubulation(new, args, o)
    _emit_log([{"move": "cover", "edge": str(edge), "degree": args.n, "cubes": new.n}], args, o)
    return 0


def cmd_fill(args, o: Output) -> int:
    c = _read(args.file)
    config = dehn.FillingConfig(v4=args.v4, threshold=args.threshold)
    report = dehn.check_2pi(c, dehn.parse_slopes(args.slopes), config)
    slopes = dehn.parse_slopes(args.slopes)
    rep = invariant_report(c)
    if o.fmt == "json":
        o.json({
            "cusps": [
                {"cusp": i, "h": cu.h, "slope": list(s), "length_squared": l2, "length": f"{ell:.10f}", "passes_2pi": ok}
                for i, (cu, s, l2, ell, ok) in enumerate(zip(rep.cusps, slopes, report.lengths_squared, report.lengths, report.passes))
            ],
            "n": report.n, "chi": report.chi, "sigma": report.sigma, "all_pass_2pi": report.all_pass_2pi,
            "threshold": report.threshold, "v4": report.v4, "gromov_norm_bound": f"{report.gromov_norm_bound:.10f}",
        })
        return 0
    o.line("#cusp", "h", "slope", "length_squared", "length", "passes_2pi")
    for i, (cu, s, l2, ell, ok) in enumerate(zip(rep.cusps, slopes, report.lengths_squared, report.lengths, report.passes)):
        o.line(i, cu.h, ",".join(map(str, s)), l2, f"{ell:.10f}", _flag(ok))
    o.line("#n", "chi", "sigma", "all_pass_2pi", "threshold", "v4", "gromov_norm_bound")
    o.line(report.n, report.chi, report.sigma, _flag(report.all_pass_2pi), report.threshold, report.v4,
           f"{report.gromov_norm_bound:.10f}")
    return 0


def cmd_canon(args, o: Output) -> int:
    a = _read(args.file)
    if args.other is None:
        form = canonical_form(a, budget=args.budget)
        if o.fmt == "json":
            o.json({"canonical_form": form.compact(), "n": a.n})
        else:
            o.out.write(form.text)
        return 0
    b = _read(args.other)
    same = are_equivalent(a, b, budget=args.budget)
    if o.fmt == "json":
        o.json({"equivalent": same})
    else:
        o.line("equivalent" if same else "inequivalent")
    return 0


def cmd_graph(args, o: Output) -> int:
    c = _read(args.file, allow_disconnected=True)
    o.out.write(to_dot(c, Path(args.file).stem.replace("-", "_")))
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for searches")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="candidate budget for searches")
    common.add_argument("--format", choices=("tsv", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="cubekit", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    p.add_argument("--budget", type=int, default=10**7, help="candidate budget for searches")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--seed-fixtures", metavar="DIR", help="write the bundled example cubulations into DIR and exit")
    sub = p.add_subparsers(dest="verb", metavar="verb")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def surgery_io(sp):
        sp.add_argument("--out", help="write the new cubulation here instead of stdout")
        sp.add_argument("--log", help="write the JSON-lines move log here")

    sp = add("validate", cmd_validate, "check a cubulation file")
    sp.add_argument("file")
    sp = add("analyze", cmd_analyze, "cusps, monodromies, volume")
    sp.add_argument("file")
    for name, func, help_ in (("search", cmd_search, "search one-hypercube cubulations"),
                              ("census", cmd_census, "write a census file")):
        sp = add(name, func, help_)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--orientable", action="store_true")
        sp.add_argument("--cusps", type=int)
        sp.add_argument("--monodromy", action="append", help="monodromy class, repeat or comma-join for a multiset")
        sp.add_argument("--matching", choices=("opposite",))
        sp.add_argument("--limit", type=int)
        if name == "census":
            sp.add_argument("--out", required=True)
    sp = add("flower", cmd_flower, "merge two cycles with a merger gadget")
    sp.add_argument("file")
    sp.add_argument("--edge", type=int)
    surgery_io(sp)
    sp = add("split", cmd_split, "insert splitter gadgets in series")
    sp.add_argument("file")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--edge", type=int)
    surgery_io(sp)
    sp = add("reduce", cmd_reduce, "splitters then flowers until exactly k cycles")
    sp.add_argument("file")
    sp.add_argument("--cusps", type=int, required=True)
    surgery_io(sp)
    sp = add("cover", cmd_cover, "cyclic cover rethreaded along an edge")
    sp.add_argument("file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--edge", type=int)
    surgery_io(sp)
    sp = add("fill", cmd_fill, "2 pi criterion for Dehn filling slopes")
    sp.add_argument("file")
    sp.add_argument("--slopes", required=True, help='"p,q,r;p,q,r;..." one triple per cusp in analyze order')
    sp.add_argument("--threshold", choices=("weak", "strict"), default="weak")
    sp.add_argument("--v4", type=float, default=dehn.V4_DEFAULT, help="volume of the regular ideal 4-simplex")
    sp = add("canon", cmd_canon, "canonical form, or equivalence of two files")
    sp.add_argument("file")
    sp.add_argument("other", nargs="?")
    sp = add("graph", cmd_graph, "incidence graph in DOT")
    sp.add_argument("file")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    o = Output(args.format, stdout, stderr)
    try:
        if args.seed_fixtures:
            for path in write_fixtures(args.seed_fixtures):
                o.line("wrote", path.name)
            if args.verb is None:
                return 0
        if args.verb is None:
            parser.print_usage(stderr)
            stderr.write("cubekit: error: a verb is required\n")
            return 2
        return args.func(args, o)
    except DOMAIN_ERRORS as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
