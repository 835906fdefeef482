#!/usr/bin/env python3
"""Build and verify quadratic witness chains at increasing depth.

For each depth the script generates a target-rich family, runs the chain
construction, and prints the live-atom counts, the distinct probe-trace
count against the n(n+1)/2 floor, and the verifier verdict.

Usage:
    python3 scripts/witness_demo.py [--max-depth 5] [--seed 0]
"""

import argparse

from setfam import WitnessChain, build_quadratic_witness, gen_witness_rich, verify_witness


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-depth", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    for depth in range(1, args.max_depth + 1):
        family, target = gen_witness_rich(depth, seed=args.seed)
        outcome = build_quadratic_witness(family, target, depth)
        if not isinstance(outcome, WitnessChain):
            print(f"depth {depth}: stuck at {outcome.reached_length} ({outcome.reason})")
            continue
        report = verify_witness(family, target, outcome)
        print(
            f"depth {depth}: universe={family.universe_size}"
            f" counts={list(outcome.target_atom_counts)}"
            f" traces={report.distinct_trace_count}/{report.required_trace_count}"
            f" verifier={'PASS' if report.ok else 'FAIL'}"
        )


if __name__ == "__main__":
    main()
