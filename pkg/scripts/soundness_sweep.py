"""Evaluate random axiom instances on random valid models and count failures.

Usage: python3 scripts/soundness_sweep.py [--models N] [--instances K] [--seed S]
"""
import argparse
import gc
import random
import sys
import time

from countersign.gen import Gen, GenConfig
from countersign.kripke import validate_model
from countersign.sat import Evaluator
from countersign.surface import print_term


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--models", type=int, default=1000)
    ap.add_argument("--instances", type=int, default=50, help="per schema and model")
    ap.add_argument("--max-worlds", type=int, default=4)
    ap.add_argument("--max-agents", type=int, default=3)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    per_schema = [0] * 10
    start = time.perf_counter()
    gc.disable()
    for _ in range(args.models):
        m = Gen(rng).model(max_worlds=args.max_worlds, max_agents=args.max_agents)
        report = validate_model(m)
        if not report.ok:
            print(f"generator produced an invalid model: {report.sexpr()}", file=sys.stderr)
            return 2
        ev = Evaluator(m)
        everywhere = (1 << len(m.worlds)) - 1
        local = Gen(rng, GenConfig(agents=m.agents))
        for schema in range(1, 10):
            for _ in range(args.instances):
                f = local.instance(schema)
                if ev.extension(f) != everywhere:
                    per_schema[schema] += 1
                    print(f"ax{schema} fails: {print_term(f)}", file=sys.stderr)
    gc.enable()
    total = args.models * args.instances * 9
    for schema in range(1, 10):
        print(f"ax{schema}: {per_schema[schema]} failures")
    print(f"{total} instances on {args.models} models in {time.perf_counter() - start:.1f}s")
    return 1 if any(per_schema) else 0


if __name__ == "__main__":
    sys.exit(main())
