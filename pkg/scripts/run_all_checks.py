#!/usr/bin/env python3
"""Run the full verification battery over every built-in instance.

Prints one line per (instance, check) and exits nonzero on any violation.
"""

import argparse
import sys
import time

from ccspace import (
    check_axioms,
    check_cancellation,
    compact_sets_space,
    distribution_space,
    embedding_suite,
    euclidean_space,
    power_space,
)
from ccspace.limits import rational_jensen_suite, weight_perturbation_suite
from ccspace.probability import conditional_suite, expectation_identity_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    spaces = [
        euclidean_space(2),
        power_space(2.0, 1),
        compact_sets_space(1),
        compact_sets_space(2),
        distribution_space(),
    ]
    failed = False
    started = time.monotonic()
    for space in spaces:
        reports = [
            check_axioms(space, trials=args.trials, seed=args.seed),
            expectation_identity_suite(space, trials=args.trials, seed=args.seed,
                                       tol=space.default_tolerance),
            conditional_suite(space, trials=args.trials // 2, seed=args.seed,
                              tol=space.default_tolerance),
            weight_perturbation_suite(space, trials=args.trials, seed=args.seed,
                                      tol=space.default_tolerance),
            rational_jensen_suite(space, trials=args.trials, seed=args.seed,
                                  tol=space.default_tolerance),
        ]
        if space.convexify_exact is not None and space.name.startswith(("euclid", "compact")):
            reports.append(check_cancellation(space, trials=args.trials, seed=args.seed))
        for report in reports:
            for name, worst, trials, verdict in report.rows():
                print(f"{space.name:20s} {name:32s} {verdict:4s} worst={worst:.3e} trials={trials}")
                failed |= verdict != "pass"
    report = embedding_suite(trials=args.trials, seed=args.seed)
    for name, worst, trials, verdict in report.rows():
        print(f"{'embedding':20s} {name:32s} {verdict:4s} worst={worst:.3e} trials={trials}")
        failed |= verdict != "pass"
    print(f"total {time.monotonic() - started:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
