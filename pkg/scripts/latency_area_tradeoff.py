#!/usr/bin/env python3
"""Print the latency/area trade between the adder designs and the two
multiplier schedules, at a configurable sweep of widths.

Usage: python scripts/latency_area_tradeoff.py [--widths 8,32,128] [--samples 200]

Each row also runs `samples` random additions against the big-integer
reference and, where the simulator keeps a live gate tally, checks it
against the closed-form count, so the table doubles as a smoke test.
"""

import argparse
import random
from dataclasses import dataclass

from arithsim.bitvec import BitVector
from arithsim.cascade import cascade_add
from arithsim.costs import Design, blocked_gate_split, cost_report, reference_table
from arithsim.flash import blocked_add, double_width_add, flash_add
from arithsim.multiplier import Schedule


@dataclass(frozen=True)
class SweepConfig:
    widths: tuple[int, ...] = (8, 32, 128)
    samples: int = 200
    seed: int = 2024


def _split(value: int, half: int) -> tuple[int, int]:
    return value & ((1 << half) - 1), value >> half


def run_design(design: Design, width: int, config: SweepConfig) -> tuple[int, str]:
    """Random-sweep one design; returns (passes, simulated gate tally or -)."""
    rng = random.Random(config.seed ^ width)
    passes = 0
    tally = "-"
    for _ in range(config.samples):
        a = rng.getrandbits(width)
        b = rng.getrandbits(width)
        if design is Design.CASCADE:
            result = cascade_add(BitVector(width, a), BitVector(width, b))
            got = result.sum.value + (result.carry << width)
            tally = str(result.trace.special_and_gates)
        elif design is Design.FLASH:
            result = flash_add(BitVector(width, a), BitVector(width, b))
            got = result.sum.value
            tally = str(result.firings.gates_evaluated)
        elif design is Design.FLASH_DOUBLE:
            half = width // 2
            a_lo, a_hi = _split(a, half)
            b_lo, b_hi = _split(b, half)
            got = double_width_add(
                BitVector(half, a_lo), BitVector(half, a_hi),
                BitVector(half, b_lo), BitVector(half, b_hi),
            ).sum.value
        else:
            got = blocked_add(BitVector(width, a), BitVector(width, b)).sum.value
        passes += got == a + b
    return passes, tally


def supported(design: Design, width: int) -> bool:
    if design is Design.CASCADE:
        return width >= 2 and width & (width - 1) == 0
    if design is Design.FLASH_DOUBLE:
        return width % 2 == 0
    if design is Design.BLOCKED_DOUBLE:
        half = width // 2
        return (
            width % 2 == 0
            and half >= 1
            and half & (half - 1) == 0
            and (half.bit_length() - 1) % 2 == 0
        )
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--widths", default="8,32,128")
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()
    config = SweepConfig(
        widths=tuple(int(w) for w in args.widths.split(",")),
        samples=args.samples,
        seed=args.seed,
    )

    adders = (Design.CASCADE, Design.FLASH, Design.FLASH_DOUBLE, Design.BLOCKED_DOUBLE)
    print(
        f"{'design':16s} {'width':>5s} {'gates':>7s} {'tally':>7s} "
        f"{'ticks':>5s} {'checked':>8s}"
    )
    for width in config.widths:
        for design in adders:
            if not supported(design, width):
                continue
            report = cost_report(design, width)
            passes, tally = run_design(design, width, config)
            if passes != config.samples:
                raise SystemExit(f"{design.value} width {width}: {passes} passes")
            if tally not in ("-", str(report.special_and_gates)):
                raise SystemExit(
                    f"{design.value} width {width}: tally {tally} disagrees "
                    f"with formula {report.special_and_gates}"
                )
            print(
                f"{report.design.value:16s} {report.width:5d} "
                f"{report.special_and_gates:7d} {tally:>7s} {report.ticks:5d} "
                f"{passes:5d}/{config.samples}"
            )

    print()
    in_block, cross_block = blocked_gate_split(64)
    print(f"blocked 128-bit split: {in_block} in-block + {cross_block} cross-block")
    for schedule in Schedule:
        design = Design.MULT_SCHEDULE_A if schedule is Schedule.A else Design.MULT_SCHEDULE_B
        report = cost_report(design, 64)
        print(
            f"mult 64-bit {schedule.value}: {report.memory_entries} memory entries, "
            f"{report.ticks} ticks"
        )

    print()
    print("headline numbers:")
    for name, value in reference_table():
        print(f"  {name:34s} {value}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
