"""Level counts of two-category nerves against the closed form.

For a one-object two-group with two-cell group A the nerve has exactly
|A|^C(n,2) simplices in level n.  The script prints the measured level
counts for every corpus two-category, the closed form where it applies,
and the filler profile of the inner 2-horn (how many horns have each
filler count) — the profile collapses to {1: ...} exactly for the
nerves coming from plain categories.

    python3 scripts/duskin_growth.py --dim-cap 4
"""

import argparse
import math

from hornfill.cat import duskin_nerve
from hornfill.corpus import all_two_categories
from hornfill.kan import horn_fillers, horn_maps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dim-cap", type=int, default=4)
    args = ap.parse_args()

    for name, c2 in all_two_categories().items():
        dusk = duskin_nerve(c2, dim_cap=args.dim_cap)
        counts = [dusk.sset.count(n) for n in range(args.dim_cap + 1)]
        line = f"{name:24} levels {counts}"
        if len(c2.cat.objects) == 1 and len(c2.one) == 1:
            closed = [len(c2.two) ** math.comb(n, 2) for n in range(args.dim_cap + 1)]
            line += f"  closed form {closed}"
        profile = {}
        for m in horn_maps(dusk.sset, 2, 1):
            k = len(horn_fillers(dusk.sset, 2, 1, m))
            profile[k] = profile.get(k, 0) + 1
        print(line + f"  inner 2-horn fillers {dict(sorted(profile.items()))}")


if __name__ == "__main__":
    main()
