"""Sweep cardinal rules and bounds, reporting where support-factoring and surjection invariance agree.

The two criteria should coincide on every row; a disagreement is printed with
both witnesses.
"""

import argparse

from logconst.kernel import AtLeast, AtMost, Exactly, as_multiset, enumerate_quantifier_functions
from logconst.logicality import factors_through_support, surjection_invariant


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--bounds", type=int, nargs="+", default=[2, 3, 4, 5])
    args = ap.parse_args()
    rules = [as_multiset(q) for q in enumerate_quantifier_functions()]
    rules += [fam(k) for fam in (Exactly, AtLeast, AtMost) for k in range(args.max_k + 1)]
    disagreements = 0
    print("rule        " + " ".join(f"b={b}" for b in args.bounds))
    for m in rules:
        cells = []
        for b in args.bounds:
            f, fx = factors_through_support(m, b)
            s, sx = surjection_invariant(m, b)
            if f != s:
                disagreements += 1
                print(f"  disagreement {m.name} at bound {b}: {fx} / {sx.render() if sx else None}")
            cells.append(("L" if f else "c") + ("=" if f == s else "!"))
        print(f"{m.name:<12}" + " ".join(f"{c:>3}" for c in cells))
    print(f"# L = logical, c = count-sensitive, = agree, ! disagree; {disagreements} disagreements")


if __name__ == "__main__":
    main()
