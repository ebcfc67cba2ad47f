"""CLI transcripts checked byte for byte against tests/golden/.

Each case runs ``cubekit.cli.run`` in a scratch directory holding the seeded
fixtures plus a few derived inputs, and records exit code, stdout, stderr and
any files the command wrote.  scripts/make_golden.py regenerates the goldens.
"""
from __future__ import annotations

import contextlib
import io
import os
import random
from pathlib import Path

from cubekit import cli
from cubekit.canonical import random_relabeling, relabel
from cubekit.fixtures import load_fixture

GOLDEN_DIR = Path(__file__).parent / "golden"

FIXTURE_FILES = ("example1.cub", "example2.cub", "seed.cub", "two_cusp_K.cub", "two_cusp_L.cub")

OPPOSITE_SEARCH = ["search", "--n", "1", "--orientable", "--matching", "opposite", "--cusps", "1"]

# name -> (argv, files written by the command)
CASES: dict[str, tuple[list[str], list[str]]] = {
    "seed_fixtures": (["--seed-fixtures", "seeded"], [f"seeded/{f}" for f in FIXTURE_FILES]),
    **{f"validate_{Path(f).stem}": (["validate", f], []) for f in FIXTURE_FILES},
    **{f"analyze_{Path(f).stem}": (["analyze", f], []) for f in FIXTURE_FILES},
    "validate_json": (["--format", "json", "validate", "example1.cub"], []),
    "analyze_json": (["--format", "json", "analyze", "example2.cub"], []),
    "validate_malformed": (["validate", "malformed.cub"], []),
    "analyze_malformed": (["analyze", "malformed.cub"], []),
    "analyze_missing": (["analyze", "no_such_file.cub"], []),
    "search_jobs1": (["--jobs", "1", *OPPOSITE_SEARCH], []),
    "search_jobs2": (["--jobs", "2", *OPPOSITE_SEARCH], []),
    "search_json_limit": (["--format", "json", *OPPOSITE_SEARCH, "--limit", "3"], []),
    "census_jobs2": (["--jobs", "2", "census", "--n", "1", "--orientable", "--matching", "opposite",
                      "--cusps", "1", "--out", "census.tsv"], ["census.tsv"]),
    "search_budget": (["--budget", "1000", "search", "--n", "1"], []),
    "flower_example1": (["flower", "example1.cub"], []),
    "flower_files": (["flower", "example1.cub", "--edge", "0", "--out", "f.cub", "--log", "f.log"], ["f.cub", "f.log"]),
    "split_example1": (["split", "example1.cub", "--count", "2"], []),
    "split_example2": (["split", "example2.cub", "--count", "1", "--edge", "3"], []),
    "reduce_example1": (["reduce", "example1.cub", "--cusps", "9"], []),
    "reduce_example1_to_1": (["reduce", "example1.cub", "--cusps", "1", "--out", "r.cub"], ["r.cub"]),
    "cover_seed": (["cover", "seed.cub", "--n", "3"], []),
    "cover_example1": (["cover", "example1.cub", "--n", "2", "--edge", "3"], []),
    "cover_bad_edge": (["cover", "example1.cub", "--n", "2", "--edge", "5"], []),
    "fill_seed": (["fill", "seed.cub", "--slopes", "0,0,1"], []),
    "fill_example1": (["fill", "example1.cub", "--slopes", "0,0,1;1,1,1;1,0,0;0,1,1;3,0,1;2,1,1"], []),
    "fill_json": (["--format", "json", "fill", "seed.cub", "--slopes", "1,0,0", "--threshold", "strict"], []),
    "fill_non_torus": (["fill", "two_cusp_K.cub", "--slopes", "0,0,1;0,0,1"], []),
    "fill_not_coprime": (["fill", "seed.cub", "--slopes", "2,0,2"], []),
    "canon_example1": (["canon", "example1.cub"], []),
    "canon_seed_json": (["--format", "json", "canon", "seed.cub"], []),
    "canon_relabeled": (["canon", "example1.cub", "example1_relabeled.cub"], []),
    "canon_relabeled_seed": (["canon", "seed_relabeled.cub", "seed.cub"], []),
    "canon_inequivalent": (["canon", "example1.cub", "example2.cub"], []),
    "canon_K_L": (["canon", "two_cusp_K.cub", "two_cusp_L.cub"], []),
    "graph_example1": (["graph", "example1.cub"], []),
    "graph_seed": (["graph", "seed.cub"], []),
    "usage_no_verb": ([], []),
    "usage_unknown_verb": (["frobnicate"], []),
    "usage_unknown_option": (["analyze", "--bogus", "example1.cub"], []),
    "usage_missing_argument": (["split", "example1.cub"], []),
}

# the slow searches, kept out of the quick determinism rerun
SLOW = {"search_jobs1", "search_jobs2", "search_json_limit", "census_jobs2"}


def prepare(workdir: Path) -> None:
    for name in FIXTURE_FILES:
        c = load_fixture(Path(name).stem)
        (workdir / name).write_text(c.serialize(), encoding="utf-8", newline="\n")
    rng = random.Random(20240601)
    for stem in ("example1", "seed"):
        c = load_fixture(stem)
        perm, isos = random_relabeling(c.n, rng)
        (workdir / f"{stem}_relabeled.cub").write_text(relabel(c, perm, isos).serialize(), encoding="utf-8", newline="\n")
    (workdir / "malformed.cub").write_text("cubes 1\npair 0.-1 0.+1 -3 -2\n", encoding="utf-8", newline="\n")


def transcript(name: str, workdir: Path) -> str:
    argv, files = CASES[name]
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(workdir)
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            code = cli.run(argv, out, err)
        parts = [f"$ cubekit {' '.join(argv)}\n", f"exit {code}\n", "--- stdout\n", out.getvalue(), "--- stderr\n", err.getvalue()]
        for f in files:
            parts += [f"--- file {f}\n", Path(f).read_text(encoding="utf-8")]
    finally:
        os.chdir(cwd)
    return "".join(parts)
