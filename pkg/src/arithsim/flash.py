"""Flash adder: N-bit addition in two clock ticks, any N.

Tick 1 half-adds the operands into sum wires s_0..s_N (s_N starts at 0) and
carry wires c_0..c_N-1. Tick 2 absorbs every set carry at once: for each
carry index i, gate AND(i, j) watches the run of sum wires above i,

    AND(i, j) = not(s_j) and s_{j-1} and ... and s_{i+1} and c_i,

so exactly one gate per set carry fires, at the lowest j > i with s_j = 0.
Complementing the wire segment s_{i+1}..s_j adds 2**(i+1), which is the
carry's weight; fired segments never overlap, so all complements happen
simultaneously. The full network has N(N+1)/2 gates.

Built on the same trailing-ones trick: a one-tick add of 2**i into a vector,
a three-tick double-width adder (two parallel halves plus a cross-carry
increment), and a three-tick blocked adder that cascades square-root-sized
blocks instead of doubling block sizes level by level.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .bitvec import BitVector, ModelIntegrityError, lowest_zero_index
from .cascade import PAIR_ADD_TABLE

HALF_ADD_TICKS = 1
RESOLVE_TICKS = 1
FLASH_ADD_TICKS = HALF_ADD_TICKS + RESOLVE_TICKS
INCREMENT_TICKS = 1
DOUBLE_WIDTH_TICKS = FLASH_ADD_TICKS + INCREMENT_TICKS
BLOCKED_TICKS = 3


@dataclass(frozen=True)
class HalfAddState:
    """Wires after tick 1: s = a xor b over N+1 bits (top bit 0), c = a and b."""

    n: int
    s: BitVector
    c: BitVector

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"width must be positive, got {self.n}")
        if self.s.width != self.n + 1 or self.c.width != self.n:
            raise ValueError("wire widths must be n+1 sum bits and n carry bits")
        if (self.s.value >> self.n) & 1:
            raise ValueError("top sum wire must start at 0")
        if self.s.value & self.c.value:
            # a xor b and a and b can never be high on the same index
            raise ValueError("sum and carry wires overlap; not a half-add output")

    def total(self) -> int:
        """The value the wires stand for; constant until the carries resolve."""
        return self.s.value + 2 * self.c.value


@dataclass(frozen=True)
class FireSet:
    """The gates that fired: one (i, j) pair per set carry, segments disjoint."""

    width: int
    firings: tuple[tuple[int, int], ...]
    gates_evaluated: int

    def __post_init__(self) -> None:
        previous_i = -1
        previous_j = 0
        for i, j in self.firings:
            if not 0 <= i < j <= self.width:
                raise ValueError(f"firing ({i}, {j}) out of range for width {self.width}")
            if i <= previous_i:
                raise ValueError("firings must have strictly ascending carry indices")
            if i < previous_j:
                raise ValueError(f"segment for carry {i} overlaps its predecessor")
            previous_i, previous_j = i, j

    def __iter__(self):
        return iter(self.firings)

    def __len__(self) -> int:
        return len(self.firings)


@dataclass(frozen=True)
class ResolveResult:
    sum: BitVector  # width n+1; the top bit is the carry out
    ticks: int
    firings: FireSet


@dataclass(frozen=True)
class IncrementResult:
    sum: BitVector  # width n+1
    ticks: int


@dataclass(frozen=True)
class DoubleWidthResult:
    sum: BitVector  # width 2n+1
    ticks: int
    low: ResolveResult
    high: ResolveResult
    cross_carry: int


@dataclass(frozen=True)
class BlockedResult:
    sum: BitVector  # width 2n+1
    ticks: int
    block_carries: tuple[int, ...]


def half_add(a: BitVector, b: BitVector) -> HalfAddState:
    """Tick 1: all sum and carry wires in parallel."""
    if a.width != b.width:
        raise ValueError(f"operand widths differ: {a.width} vs {b.width}")
    n = a.width
    return HalfAddState(
        n=n,
        s=BitVector(n + 1, a.value ^ b.value),
        c=BitVector(n, a.value & b.value),
    )


def sc_and(state: HalfAddState, i: int, j: int) -> int:
    """Evaluate the single gate AND(i, j) on the unresolved wires."""
    n = state.n
    if not 0 <= i < j <= n:
        raise ValueError(f"gate indices need 0 <= i < j <= {n}, got ({i}, {j})")
    if (state.s.value >> j) & 1:
        return 0
    between = ((1 << (j - i - 1)) - 1) << (i + 1)  # s_{i+1} .. s_{j-1}
    if state.s.value & between != between:
        return 0
    return (state.c.value >> i) & 1


def fire_set(state: HalfAddState) -> FireSet:
    """Evaluate all N(N+1)/2 gates on the original wires.

    Gates are evaluated row by row (fixed i, ascending j). Once a row's
    running conjunction hits zero, every remaining gate in it reads 0 by the
    same conjunction, so the rest of the row is tallied in bulk.
    """
    n = state.n
    s = state.s.value
    c = state.c.value
    firings = []
    gates = 0
    for i in range(n):
        if not (c >> i) & 1:
            gates += n - i  # every gate in the row conjoins c_i = 0
            continue
        j = i + 1
        while True:
            gates += 1
            if not (s >> j) & 1:
                firings.append((i, j))
                break
            j += 1
            if j > n:
                raise ModelIntegrityError(f"carry {i} found no absorbing gate")
        gates += n - j  # gates beyond j conjoin the 0 found at s_j
    if gates != n * (n + 1) // 2:
        raise ModelIntegrityError("gate tally disagrees with the network size")
    return FireSet(width=n, firings=tuple(firings), gates_evaluated=gates)


def segment_mask(i: int, j: int) -> int:
    """Bit mask of the complement segment s_{i+1}..s_j for firing (i, j)."""
    return ((1 << (j - i)) - 1) << (i + 1)


def apply_firings_sequentially(
    s: BitVector, firings, order: list[int] | None = None
) -> BitVector:
    """Complement the fired segments one at a time, optionally permuted.

    Disjointness makes the order irrelevant; tests lean on that.
    """
    pairs = list(firings)
    if order is not None:
        pairs = [pairs[t] for t in order]
    value = s.value
    for i, j in pairs:
        value ^= segment_mask(i, j)
    return BitVector(s.width, value)


def resolve(state: HalfAddState) -> ResolveResult:
    """Tick 2: fire the gate network and complement all segments at once."""
    firings = fire_set(state)
    union = 0
    for i, j in firings:
        seg = segment_mask(i, j)
        if union & seg:
            raise ModelIntegrityError("complement segments overlap")
        union |= seg
    total = state.s.value ^ union
    if total != state.total():
        raise ModelIntegrityError("carry absorption changed the running total")
    return ResolveResult(
        sum=BitVector(state.n + 1, total), ticks=FLASH_ADD_TICKS, firings=firings
    )


def flash_add(a: BitVector, b: BitVector) -> ResolveResult:
    """Two-tick N-bit addition; the result's top bit is the carry out."""
    return resolve(half_add(a, b))


def increment_by_pow2(x: BitVector, i: int) -> IncrementResult:
    """Add 2**i to an N-bit vector in one tick; result is N+1 bits wide.

    The trailing-ones detector finds the lowest j >= i with bit j clear
    (position N counts as a cleared overflow bit) and the circuit complements
    positions i..j simultaneously.
    """
    n = x.width
    if not 0 <= i < n:
        raise ValueError(f"increment index {i} out of range for width {n}")
    j = i + lowest_zero_index(x.value >> i)  # bit n is implicitly 0
    result = x.value ^ (((2 << (j - i)) - 1) << i)
    return IncrementResult(sum=BitVector(n + 1, result), ticks=INCREMENT_TICKS)


def double_width_add(
    a_lo: BitVector, a_hi: BitVector, b_lo: BitVector, b_hi: BitVector
) -> DoubleWidthResult:
    """Add two 2N-bit values as parallel N-bit halves plus one cross carry.

    Ticks 1-2 run both halves' flash additions side by side; tick 3 folds the
    low half's carry-out into the high half's N+1 result bits. The latency is
    three ticks whether or not the cross carry fires.
    """
    n = a_lo.width
    for name, vec in (("a_hi", a_hi), ("b_lo", b_lo), ("b_hi", b_hi)):
        if vec.width != n:
            raise ValueError(f"{name} must be {n} bits wide, got {vec.width}")
    low = flash_add(a_lo, b_lo)
    high = flash_add(a_hi, b_hi)
    cross = (low.sum.value >> n) & 1
    high_value = high.sum.value
    if cross:
        j = lowest_zero_index(high_value)
        if j > n:
            raise ModelIntegrityError("cross-carry increment escaped the high half")
        high_value ^= (2 << j) - 1
    total = (high_value << n) | (low.sum.value & ((1 << n) - 1))
    return DoubleWidthResult(
        sum=BitVector(2 * n + 1, total),
        ticks=DOUBLE_WIDTH_TICKS,
        low=low,
        high=high,
        cross_carry=cross,
    )


def _power_of_four(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0 and (n.bit_length() - 1) % 2 == 0


def blocked_add(a: BitVector, b: BitVector, blocks: int | None = None) -> BlockedResult:
    """Add two 2N-bit values in three ticks via sqrt(N) equal blocks.

    Tick 1 pair-adds all bit couples through the 16-entry lookup units.
    Tick 2 resolves each block's pair carries inside the block with the
    carry-absorbing AND network, emitting one carry per block. Tick 3 absorbs
    every block carry into the bits above it with one trailing-ones increment
    unit per block, all firing together. N must be a power of four so the
    block count sqrt(N) is a power of two and blocks divide the width evenly.
    """
    width = a.width
    if b.width != width:
        raise ValueError(f"operand widths differ: {width} vs {b.width}")
    if width % 2:
        raise ValueError(f"operand width must be even, got {width}")
    half = width // 2
    if not _power_of_four(half):
        raise ValueError(f"half-width {half} must be a power of four")
    root = isqrt(half)
    if blocks is None:
        blocks = root
    if blocks != root:
        raise ValueError(f"block count must be sqrt({half}) = {root}, got {blocks}")
    bw = width // blocks  # 2 * sqrt(N) bits per block

    # tick 1: pair-leaf initialization
    s_val = 0
    pair_carries = []
    for p in range(width // 2):
        index = ((a.value >> (2 * p)) & 3) | (((b.value >> (2 * p)) & 3) << 2)
        pair_sum, carry = PAIR_ADD_TABLE[index]
        s_val |= pair_sum << (2 * p)
        pair_carries.append(carry)
    carried_weight = sum(c << (2 * p + 2) for p, c in enumerate(pair_carries))
    if s_val + carried_weight != a.value + b.value:
        raise ModelIntegrityError("pair-leaf initialization lost value")

    # tick 2: absorb pair carries inside each block, one carry out per block
    flips = 0
    block_carries = []
    for bk in range(blocks):
        base = bk * bw
        top = base + bw
        carry_out = 0
        for q in range(bw // 2):
            if not pair_carries[base // 2 + q]:
                continue
            start = base + 2 * q + 2
            if start >= top:
                # the block's top pair carries straight out
                if carry_out:
                    raise ModelIntegrityError("two carries reached one block top")
                carry_out = 1
                continue
            window = (s_val >> start) & ((1 << (top - start)) - 1)
            j = start + lowest_zero_index(window)  # top when the window is all ones
            if j >= top:
                seg = ((1 << (top - start)) - 1) << start
                if carry_out:
                    raise ModelIntegrityError("two carries reached one block top")
                carry_out = 1
            else:
                seg = ((1 << (j - start + 1)) - 1) << start
            if flips & seg:
                raise ModelIntegrityError("in-block complement segments overlap")
            flips |= seg
        block_carries.append(carry_out)
    resolved = s_val ^ flips
    carry_weight = sum(c << ((bk + 1) * bw) for bk, c in enumerate(block_carries))
    if resolved + carry_weight != a.value + b.value:
        raise ModelIntegrityError("in-block resolution lost value")

    # tick 3: one increment unit per block carry, spanning up to the top bit
    flips = 0
    for bk, carry in enumerate(block_carries):
        if not carry:
            continue
        start = (bk + 1) * bw  # == width for the top block: the overflow bit
        j = start + lowest_zero_index(resolved >> start)  # bits above width are 0
        seg = ((1 << (j - start + 1)) - 1) << start
        if flips & seg:
            raise ModelIntegrityError("cross-block complement segments overlap")
        flips |= seg
    total = resolved ^ flips
    if total != a.value + b.value:
        raise ModelIntegrityError("cross-block resolution lost value")
    return BlockedResult(
        sum=BitVector(width + 1, total),
        ticks=BLOCKED_TICKS,
        block_carries=tuple(block_carries),
    )
