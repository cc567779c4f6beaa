#!/usr/bin/env python3
"""Walk one addition and one multiplication through every intermediate state.

Usage: python scripts/demo_run.py [--width 8] [--seed 3]

Meant for eyeballing how the circuits behave, not for benchmarking; all the
heavy verification lives in the test suite.
"""

import argparse
import random

from arithsim.bitvec import BitVector
from arithsim.cascade import cascade_add
from arithsim.flash import fire_set, half_add, resolve
from arithsim.multiplier import Schedule, multiply


def show_cascade(a: BitVector, b: BitVector) -> None:
    result = cascade_add(a, b)
    print(f"cascade {a} + {b}")
    for record in result.trace.to_records():
        carries = ",".join(str(c) for c in record["carries"])
        print(f"  level {record['level']}: sums={record['sums']} carries=[{carries}]")
    print(
        f"  sum={result.sum} carry={result.carry} "
        f"ticks={result.trace.ticks} gates={result.trace.special_and_gates}"
    )


def show_flash(a: BitVector, b: BitVector) -> None:
    state = half_add(a, b)
    firings = fire_set(state)
    print(f"flash {a} + {b}")
    print(f"  tick 1: s={state.s} c={state.c}")
    fired = " ".join(f"({i},{j})" for i, j in firings) or "none"
    print(f"  tick 2: firings {fired} over {firings.gates_evaluated} gates")
    result = resolve(state)
    print(f"  sum={result.sum} ticks={result.ticks}")


def show_multiply(a: BitVector, b: BitVector, schedule: Schedule) -> None:
    result = multiply(a, b, schedule)
    print(f"multiply {int(a)} x {int(b)}, schedule {schedule.value}")
    for index, stage in enumerate(result.report.stages, start=1):
        print(
            f"  stage {index}: {stage.kind.value} {stage.rows_in} -> {stage.rows_out} "
            f"rows ({stage.left_out} left out, {stage.ticks} ticks, "
            f"{stage.circuits_used} circuits)"
        )
    print(
        f"  product={int(result.product)} "
        f"(= {int(a) * int(b)}) ticks={result.ticks}"
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--width", type=int, default=8)
    parser.add_argument("--seed", type=int, default=3)
    args = parser.parse_args()
    if args.width < 2 or args.width & (args.width - 1):
        raise SystemExit("width must be a power of two >= 2")

    rng = random.Random(args.seed)
    a = BitVector(args.width, rng.getrandbits(args.width))
    b = BitVector(args.width, rng.getrandbits(args.width))

    show_cascade(a, b)
    print()
    show_flash(a, b)
    if args.width in (4, 8, 16, 32, 64):
        print()
        for schedule in Schedule:
            show_multiply(a, b, schedule)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
