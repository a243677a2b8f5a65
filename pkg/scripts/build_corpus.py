"""Regenerate the shipped proof scripts from their recipes.

Usage: python3 scripts/build_corpus.py [--check]

With --check nothing is written; the exit code says whether the shipped
files are current.
"""
import argparse
import sys
from pathlib import Path

from countersign.derivations import RECIPES
from countersign.hilbert import check_proof
from countersign.surface import print_proof

DATA = Path(__file__).resolve().parents[1] / "src" / "countersign" / "data"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args(argv)
    stale = []
    for name, recipe in RECIPES.items():
        proof = recipe()
        verdict = check_proof(proof)
        if not verdict.accepted:
            print(f"{name}: recipe produced a rejected proof: {verdict.text()}", file=sys.stderr)
            return 1
        text = print_proof(proof)
        path = DATA / f"{name}.proof"
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(name)
            continue
        path.write_text(text)
        print(f"{path.name}: {len(proof.lines)} lines")
    if stale:
        print("stale: " + ", ".join(stale), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
