"""Regenerate the CLI golden transcripts in tests/golden/.

Run after an intended change of CLI output, then review the diff.
"""
import argparse
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import cli_cases  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", help="only these cases")
    args = ap.parse_args()
    cli_cases.GOLDEN_DIR.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)
        cli_cases.prepare(work)
        for name in args.names or cli_cases.CASES:
            text = cli_cases.transcript(name, work)
            (cli_cases.GOLDEN_DIR / f"{name}.txt").write_text(text, encoding="utf-8", newline="\n")
            print(name, text.split("\n")[1])


if __name__ == "__main__":
    main()
