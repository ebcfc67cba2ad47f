"""Census of orientable one-hypercube cubulations, one row per equivalence class.

Prints the number of classes per cusp count and per cusp profile, and the
outcome of the one-cusp check (is every single-cusp section a 3-torus?).

    python3 scripts/run_census.py --out census_n1.tsv [--jobs 4]
"""
import argparse
import collections
import logging
import time

from cubekit.census import SearchSpec, census_write, enumerate as enumerate_census


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="census_n1.tsv")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cusps", type=int)
    ap.add_argument("--all", action="store_true", help="include non-orientable cubulations")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    t = time.time()
    spec = SearchSpec(n=1, orientable_only=not args.all, cusp_count=args.cusps, jobs=args.jobs, budget=10**8)
    entries = list(enumerate_census(spec))
    census_write(entries, args.out)
    print(f"{len(entries)} classes in {time.time() - t:.1f}s -> {args.out}")

    by_k = collections.Counter(len(e.cusp_profile) for e in entries)
    for k in sorted(by_k):
        print(f"cusps={k}\tclasses={by_k[k]}")
    one = [e for e in entries if len(e.cusp_profile) == 1]
    classes = collections.Counter(e.cusp_profile[0][1] for e in one)
    print("one-cusp monodromy classes:", dict(classes))
    profiles = collections.Counter(tuple(cls for _, cls in e.cusp_profile) for e in entries if len(e.cusp_profile) == 2)
    for prof, count in sorted(profiles.items()):
        print("two-cusp profile", ",".join(prof), count)


if __name__ == "__main__":
    main()
