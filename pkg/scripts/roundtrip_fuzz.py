"""Round-trip generated formulas through the printer and parser over many seeds."""

import argparse

from logconst.generators import DEFAULT_SIGNATURE, FormulaGenerator
from logconst.syntax import parse, print_formula


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()
    total = failures = 0
    for seed in range(args.seeds):
        gen = FormulaGenerator(DEFAULT_SIGNATURE, seed=seed, max_depth=args.depth)
        for _ in range(args.count):
            phi = gen.formula()
            for uni in (False, True):
                total += 1
                if parse(print_formula(phi, unicode=uni), DEFAULT_SIGNATURE) != phi:
                    failures += 1
                    print("FAIL", print_formula(phi))
    print(f"{total - failures}/{total} round trips ok")


if __name__ == "__main__":
    main()
