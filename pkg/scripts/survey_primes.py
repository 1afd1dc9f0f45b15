#!/usr/bin/env python3
"""Tabulate the prime predictor and check each row against enumeration.

For p = 1 mod 8 the mod-8 criterion says nothing, so the summary at the end
reports how often secondary cycles show up there.
"""

import argparse
import collections
import sys

from movegraph.predictor import Mod8Verdict, survey, survey_csv, verify_prediction


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=500)
    ap.add_argument("--check-below", type=int, default=200,
                    help="enumerate Gamma_p for p below this bound (cost grows like p^2)")
    ap.add_argument("--csv", action="store_true", help="emit the full CSV table instead of a summary")
    args = ap.parse_args()

    rows = survey(args.p_max)
    if args.csv:
        sys.stdout.write(survey_csv(rows))
        return

    cases = collections.Counter(r.prediction.case_label for r in rows)
    undetermined = [r for r in rows if r.criterion is Mod8Verdict.UNDETERMINED]
    with_secondary = sum(r.prediction.secondary_exists for r in undetermined)
    checked = [r.p for r in rows if r.p < args.check_below]
    bad = [p for p in checked if not verify_prediction(p)]

    print(f"odd primes below {args.p_max}: {len(rows)}")
    for label, count in sorted(cases.items()):
        print(f"  {label:8s} {count}")
    print(f"p = 1 mod 8: {len(undetermined)} primes, {with_secondary} with secondary cycles")
    print(f"enumeration check for p < {args.check_below}: {len(checked) - len(bad)}/{len(checked)} agree")
    if bad:
        print("mismatches:", bad)
        sys.exit(2)


if __name__ == "__main__":
    main()
