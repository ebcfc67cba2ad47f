"""Regenerate the frozen cubulation fixtures in src/cubekit/data."""
import time
from pathlib import Path

from cubekit.census import find_one_cusp_seed, find_two_cusp_examples
from cubekit.cycles import invariant_report
from cubekit.fixtures import example1, example2

DATA = Path(__file__).resolve().parents[1] / "src" / "cubekit" / "data"


def write(name, c, lines):
    rep = invariant_report(c)
    prof = ", ".join(f"({h}, {cls})" for h, cls in rep.profile)
    head = [f"# {line}" for line in lines] + [f"# cusp profile: {prof}"]
    (DATA / f"{name}.cub").write_text("\n".join(head) + "\n" + c.serialize(), encoding="utf-8")
    print(f"{name}: n={c.n} k={rep.k}")


def main():
    write("example1", example1(), ["one hypercube, opposite facets glued by translations"])
    write("example2", example2(), ["two hypercubes, corresponding facets glued by the identity"])
    t = time.time()
    write("seed", find_one_cusp_seed(), [
        "first orientable one-hypercube cubulation with a single cycle of squares and trivial monodromy",
        "found by census.find_one_cusp_seed (matching orbits in lexicographic order, maps in lexicographic order)",
    ])
    K, L = find_two_cusp_examples()
    write("two_cusp_K", K, ["first orientable one-hypercube cubulation with two cycles, monodromy classes R4 and R4",
                            "found by census.find_two_cusp_examples"])
    write("two_cusp_L", L, ["first orientable one-hypercube cubulation with two cycles, monodromy classes -I and -I",
                            "found by census.find_two_cusp_examples"])
    print(f"searches took {time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
