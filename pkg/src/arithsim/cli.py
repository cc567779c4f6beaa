"""Command-line front end: add, mul, verify, cost, schedule.

Operands travel as lowercase unprefixed hex. Structured output is one
`key=value` record per line with a fixed field order, so identical
configurations (seed included) produce byte-identical bytes. The default
format comes from the ARITHSIM_FORMAT environment variable when set.

Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass

from .bitvec import BitVector, oracle_add, oracle_mul
from .cascade import cascade_add
from .costs import Design, cost_report, reference_table
from .flash import blocked_add, double_width_add, flash_add
from .multiplier import PUBLISHED_ROW_COUNT, RowSet, Schedule, consolidate, multiply

# random.Random is CPython's Mersenne Twister; the name travels in every
# report header so sweeps can be re-run bit for bit.
GENERATOR_NAME = "mt19937"
FORMAT_ENV_VAR = "ARITHSIM_FORMAT"

ADDER_DESIGNS = ("cascade", "flash", "flash_double", "blocked_double")
EXHAUSTIVE_ADDER_WIDTH = 8
EXHAUSTIVE_MULT_WIDTH = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    design: str = "flash"
    width: int = 64
    schedule: Schedule = Schedule.B
    trials: int = 10000
    seed: int = 0
    output_format: str = "text"

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.output_format not in ("text", "structured"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def _record(__label: str, **fields) -> str:
    parts = [f"record={__label}"]
    parts.extend(f"{key}={value}" for key, value in fields.items())
    return " ".join(parts)


def _require_power_of_two(width: int, design: str) -> None:
    if width < 2 or width & (width - 1):
        raise ValueError(f"{design} needs a power-of-two width >= 2, got {width}")


def _split_halves(vec: BitVector) -> tuple[BitVector, BitVector]:
    half = vec.width // 2
    return (
        BitVector(half, vec.value & ((1 << half) - 1)),
        BitVector(half, vec.value >> half),
    )


def _run_adder(design: str, a: BitVector, b: BitVector):
    """Returns (display sum, carry bit, ticks, extras). The display sum is
    the design's natural output: N bits with the carry held separately for
    the cascade, N+1 bits with the carry on top for the others."""
    if design == "cascade":
        result = cascade_add(a, b)
        return result.sum, result.carry, result.trace.ticks, result
    if design == "flash":
        result = flash_add(a, b)
        return result.sum, result.sum.bit(a.width), result.ticks, result
    if design == "flash_double":
        a_lo, a_hi = _split_halves(a)
        b_lo, b_hi = _split_halves(b)
        result = double_width_add(a_lo, a_hi, b_lo, b_hi)
        return result.sum, result.sum.bit(a.width), result.ticks, result
    if design == "blocked_double":
        result = blocked_add(a, b)
        return result.sum, result.sum.bit(a.width), result.ticks, result
    raise ValueError(f"unknown adder design {design!r}")


def _adder_total(design: str, sum_vec: BitVector, carry: int, width: int) -> int:
    """Full value including the carry, for checking against the oracle."""
    if design == "cascade":
        return sum_vec.value | (carry << width)
    return sum_vec.value


def _validate_adder_width(design: str, width: int) -> None:
    if design in ("cascade", "flash"):
        _require_power_of_two(width, design)
    elif design == "flash_double":
        _require_power_of_two(width, design)
    elif design == "blocked_double":
        if width % 2:
            raise ValueError(f"blocked_double needs an even width, got {width}")
        half = width // 2
        if half & (half - 1) or (half.bit_length() - 1) % 2:
            raise ValueError(
                f"blocked_double needs a power-of-four half-width, got {half}"
            )
    else:
        raise ValueError(f"unknown adder design {design!r}")


def cmd_add(config: RunConfig, a_hex: str, b_hex: str, trace: bool = False) -> int:
    _validate_adder_width(config.design, config.width)
    a = BitVector.from_hex(a_hex, config.width)
    b = BitVector.from_hex(b_hex, config.width)
    sum_vec, carry, ticks, extras = _run_adder(config.design, a, b)
    if config.output_format == "structured":
        print(
            _record(
                "add",
                design=config.design,
                width=config.width,
                a=a.to_hex(),
                b=b.to_hex(),
                sum=sum_vec.to_hex(),
                carry=carry,
                ticks=ticks,
            )
        )
    else:
        print(f"add design={config.design} width={config.width}")
        print(f"a      = {a.to_hex()} ({a.to_binary()})")
        print(f"b      = {b.to_hex()} ({b.to_binary()})")
        print(f"sum    = {sum_vec.to_hex()} ({sum_vec.to_binary()})")
        print(f"carry  = {carry}")
        print(f"ticks  = {ticks}")
    if trace:
        _print_trace(config, extras)
    return 0


def _print_trace(config: RunConfig, extras) -> None:
    structured = config.output_format == "structured"
    if config.design == "cascade":
        for rec in extras.trace.to_records():
            carries = ",".join(str(c) for c in rec["carries"])
            if structured:
                print(_record("level", level=rec["level"], sums=rec["sums"], carries=carries))
            else:
                print(f"level {rec['level']}: sums={rec['sums']} carries={carries}")
    elif config.design == "flash":
        pairs = ",".join(f"{i}:{j}" for i, j in extras.firings)
        if structured:
            print(_record("firings", pairs=pairs, gates=extras.firings.gates_evaluated))
        else:
            print(f"firings: [{pairs}] gates={extras.firings.gates_evaluated}")
    elif config.design == "flash_double":
        if structured:
            print(_record("halves", cross_carry=extras.cross_carry))
        else:
            print(f"cross carry: {extras.cross_carry}")
    elif config.design == "blocked_double":
        bits = ",".join(str(c) for c in extras.block_carries)
        if structured:
            print(_record("block_carries", bits=bits))
        else:
            print(f"block carries: [{bits}]")


def cmd_mul(config: RunConfig, a_hex: str, b_hex: str) -> int:
    a = BitVector.from_hex(a_hex, config.width)
    b = BitVector.from_hex(b_hex, config.width)
    result = multiply(a, b, config.schedule)
    trajectory = ",".join(str(n) for n in result.report.row_trajectory)
    if config.output_format == "structured":
        print(
            _record(
                "mul",
                schedule=config.schedule.value,
                width=config.width,
                a=a.to_hex(),
                b=b.to_hex(),
                product=result.product.to_hex(),
                ticks=result.ticks,
                trajectory=trajectory,
            )
        )
    else:
        print(f"mul schedule={config.schedule.value} width={config.width}")
        print(f"a          = {a.to_hex()}")
        print(f"b          = {b.to_hex()}")
        print(f"product    = {result.product.to_hex()}")
        print(f"ticks      = {result.ticks}")
        print(f"trajectory = [{trajectory}]")
    return 0


def _verify_trials(config: RunConfig):
    """Yield (a, b) value pairs: exhaustive at small widths, else seeded."""
    limit = EXHAUSTIVE_MULT_WIDTH if config.design == "mult" else EXHAUSTIVE_ADDER_WIDTH
    if config.width <= limit:
        space = 1 << config.width
        for a in range(space):
            for b in range(space):
                yield a, b
    else:
        rng = random.Random(config.seed)
        for _ in range(config.trials):
            yield rng.getrandbits(config.width), rng.getrandbits(config.width)


def cmd_verify(config: RunConfig) -> int:
    if config.design == "mult":
        if config.width > EXHAUSTIVE_MULT_WIDTH and config.width not in (8, 16, 32, 64):
            raise ValueError(f"multiplier verify supports widths 4-64, got {config.width}")

        def check(a: int, b: int) -> tuple[int, int]:
            got = multiply(
                BitVector(config.width, a), BitVector(config.width, b), config.schedule
            ).product.value
            return got, oracle_mul(a, b)

    else:
        _validate_adder_width(config.design, config.width)

        def check(a: int, b: int) -> tuple[int, int]:
            sum_vec, carry, _, _ = _run_adder(
                config.design, BitVector(config.width, a), BitVector(config.width, b)
            )
            got = _adder_total(config.design, sum_vec, carry, config.width)
            return got, oracle_add(a, b)

    limit = EXHAUSTIVE_MULT_WIDTH if config.design == "mult" else EXHAUSTIVE_ADDER_WIDTH
    exhaustive = config.width <= limit
    total = (1 << config.width) ** 2 if exhaustive else config.trials
    mode = "exhaustive" if exhaustive else "random"
    structured = config.output_format == "structured"
    header_fields = dict(
        command="verify",
        design=config.design,
        width=config.width,
        schedule=config.schedule.value if config.design == "mult" else "-",
        mode=mode,
        trials=total,
        seed="-" if exhaustive else config.seed,
        generator=GENERATOR_NAME,
    )
    if structured:
        print(_record("header", **header_fields))
    else:
        fields = " ".join(f"{k}={v}" for k, v in header_fields.items())
        print(fields)

    passed = 0
    failed = 0
    first = None
    for a, b in _verify_trials(config):
        got, want = check(a, b)
        if got == want:
            passed += 1
        else:
            failed += 1
            if first is None:
                first = (a, b, got, want)
    if first is None:
        counterexample = "-"
    else:
        a, b, got, want = first
        counterexample = f"a={a:x},b={b:x},got={got:x},want={want:x}"
    if structured:
        print(_record("verify", passed=passed, failed=failed, counterexample=counterexample))
    else:
        print(f"result: {passed}/{passed + failed} pass")
        if first is not None:
            print(f"first counterexample: {counterexample}")
    return 0 if failed == 0 else 1


def cmd_cost(config: RunConfig, table: bool) -> int:
    structured = config.output_format == "structured"
    if table:
        for name, value in reference_table():
            if structured:
                print(_record("cost", name=name, value=value))
            else:
                print(f"{name:34s} {value}")
        return 0
    report = cost_report(Design(config.design), config.width)
    if structured:
        print(
            _record(
                "cost",
                design=report.design.value,
                width=report.width,
                gates=report.special_and_gates,
                entries=report.memory_entries,
                ticks=report.ticks,
            )
        )
    else:
        print(f"design  = {report.design.value}")
        print(f"width   = {report.width}")
        print(f"gates   = {report.special_and_gates}")
        print(f"entries = {report.memory_entries}")
        print(f"ticks   = {report.ticks}")
    return 0


def cmd_schedule(config: RunConfig, rows: int) -> int:
    if not 3 <= rows <= PUBLISHED_ROW_COUNT:
        raise ValueError(f"row count must be 3..{PUBLISHED_ROW_COUNT}, got {rows}")
    width = 2 * PUBLISHED_ROW_COUNT
    zero = BitVector(width, 0)
    rowset = RowSet(width, (zero,) * rows)
    _, report = consolidate(rowset, config.schedule)
    structured = config.output_format == "structured"
    for index, stage in enumerate(report.stages):
        fields = dict(
            index=index + 1,
            kind=stage.kind.value,
            rows_in=stage.rows_in,
            rows_out=stage.rows_out,
            left_out=stage.left_out,
            ticks=stage.ticks,
            circuits=stage.circuits_used,
        )
        if structured:
            print(_record("stage", **fields))
        else:
            print(" ".join(f"{k}={v}" for k, v in fields.items()))
    trajectory = ",".join(str(n) for n in report.row_trajectory)
    if structured:
        print(
            _record(
                "schedule",
                schedule=config.schedule.value,
                rows=rows,
                trajectory=trajectory,
                total_ticks=report.total_ticks,
            )
        )
    else:
        print(f"schedule {config.schedule.value}: trajectory=[{trajectory}] total_ticks={report.total_ticks}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "structured"),
        default=None,
        help=f"output format (default: ${FORMAT_ENV_VAR} or text)",
    )
    parser = argparse.ArgumentParser(
        prog="arithsim",
        description="Simulate, verify, and cost constant-time adder and multiplier designs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    add = sub.add_parser("add", parents=[common], help="add two hex operands")
    add.add_argument("--design", choices=ADDER_DESIGNS, default="flash")
    add.add_argument("--width", type=int, required=True)
    add.add_argument("--trace", action="store_true", help="print the level trace or fire set")
    add.add_argument("a_hex")
    add.add_argument("b_hex")

    mul = sub.add_parser("mul", parents=[common], help="multiply two hex operands")
    mul.add_argument("--schedule", choices=("A", "B"), default="B")
    mul.add_argument("--width", type=int, required=True)
    mul.add_argument("a_hex")
    mul.add_argument("b_hex")

    verify = sub.add_parser("verify", parents=[common], help="sweep a design against the oracle")
    verify.add_argument("--design", choices=ADDER_DESIGNS + ("mult",), required=True)
    verify.add_argument("--width", type=int, required=True)
    verify.add_argument("--schedule", choices=("A", "B"), default="B")
    verify.add_argument("--trials", type=int, default=10000)
    verify.add_argument("--seed", type=int, default=0)

    cost = sub.add_parser("cost", parents=[common], help="report a design's hardware budget")
    cost.add_argument("--design", choices=tuple(d.value for d in Design))
    cost.add_argument("--width", type=int)
    cost.add_argument("--table", action="store_true", help="print the reference number table")

    schedule = sub.add_parser("schedule", parents=[common], help="show a consolidation schedule")
    schedule.add_argument("--schedule", choices=("A", "B"), required=True)
    schedule.add_argument("--rows", type=int, default=PUBLISHED_ROW_COUNT)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    output_format = args.format or os.environ.get(FORMAT_ENV_VAR) or "text"
    try:
        if args.command == "add":
            config = RunConfig(
                command="add",
                design=args.design,
                width=args.width,
                output_format=output_format,
            )
            return cmd_add(config, args.a_hex, args.b_hex, trace=args.trace)
        if args.command == "mul":
            config = RunConfig(
                command="mul",
                width=args.width,
                schedule=Schedule(args.schedule),
                output_format=output_format,
            )
            return cmd_mul(config, args.a_hex, args.b_hex)
        if args.command == "verify":
            config = RunConfig(
                command="verify",
                design=args.design,
                width=args.width,
                schedule=Schedule(args.schedule),
                trials=args.trials,
                seed=args.seed,
                output_format=output_format,
            )
            return cmd_verify(config)
        if args.command == "cost":
            if not args.table and (args.design is None or args.width is None):
                raise ValueError("cost needs --design and --width, or --table")
            config = RunConfig(
                command="cost",
                design=args.design or Design.FLASH.value,
                width=args.width or 64,
                output_format=output_format,
            )
            return cmd_cost(config, table=args.table)
        if args.command == "schedule":
            config = RunConfig(
                command="schedule",
                schedule=Schedule(args.schedule),
                output_format=output_format,
            )
            return cmd_schedule(config, rows=args.rows)
        raise ValueError(f"unknown command {args.command!r}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
