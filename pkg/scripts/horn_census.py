"""Horn census over the category corpus.

For every corpus category: build the nerve up to the cap, run the full
horn census, and print unfilled/ambiguous counts per horn shape next to
the four flags.  The groupoid column is computed from the composition
table, so the table makes the Kan-iff-groupoid pattern visible at a
glance.

    python3 scripts/horn_census.py --dim-cap 3
"""

import argparse

from hornfill.cat import nerve
from hornfill.corpus import all_categories
from hornfill.kan import classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dim-cap", type=int, default=3)
    args = ap.parse_args()

    cats = all_categories()
    width = max(len(name) for name in cats)
    print(f"{'category':{width}}  grpd  weakK  Kan   horn (n,k): unfilled/ambiguous")
    for name, c in cats.items():
        rep = classify(nerve(c, dim_cap=args.dim_cap).sset, args.dim_cap)
        cells = " ".join(
            f"({v.n},{v.k}):{v.unfilled}/{v.ambiguous}" for v in rep.verdicts
        )
        print(
            f"{name:{width}}  {str(c.is_groupoid()):5} {str(rep.weak_kan):6}"
            f" {str(rep.kan):5} {cells}"
        )


if __name__ == "__main__":
    main()
