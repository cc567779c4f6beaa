import pytest

from arithsim.bitvec import BitVector
from arithsim.costs import (
    Design,
    blocked_gate_split,
    blocked_gates,
    cascade_gates,
    consolidation_lower_bound,
    cost_report,
    double_width_gates,
    end_to_end_ticks,
    flash_gates,
    mult_hardware_estimate,
    reference_table,
    schedule_comparison,
    schedule_speedup,
)
from arithsim.flash import fire_set, half_add
from arithsim.multiplier import Schedule


def test_cascade_gates_values():
    assert [cascade_gates(k) for k in range(1, 9)] == [0, 3, 11, 31, 79, 191, 447, 1023]
    assert cascade_gates(7) == 447  # the 128-bit adder
    with pytest.raises(ValueError):
        cascade_gates(0)


def test_flash_gates_values():
    assert [flash_gates(n) for n in (4, 8, 16, 64, 128)] == [10, 36, 136, 2080, 8256]
    with pytest.raises(ValueError):
        flash_gates(0)


def test_flash_gates_pair_leaf_halves_the_network():
    assert flash_gates(8, pair_leaf=True) == 18
    assert flash_gates(64, pair_leaf=True) == 1040
    with pytest.raises(ValueError):
        flash_gates(2, pair_leaf=True)  # 3 gates don't halve


def test_fire_set_budget_agrees_with_the_formula():
    for n in (4, 8, 16, 64):
        state = half_add(BitVector(n, 0), BitVector(n, 0))
        assert fire_set(state).gates_evaluated == flash_gates(n)


def test_double_width_gates():
    assert double_width_gates(64) == 2144
    assert double_width_gates(128) == 8384
    with pytest.raises(ValueError):
        double_width_gates(0)


def test_blocked_gates_and_split():
    assert blocked_gate_split(64) == (544, 456)
    assert blocked_gates(64) == 1000
    assert blocked_gates(16) == 124
    with pytest.raises(ValueError):
        blocked_gate_split(8)  # not a power of four
    with pytest.raises(ValueError):
        blocked_gate_split(0)


def test_consolidation_lower_bound():
    assert consolidation_lower_bound(64, 2) == 9
    assert consolidation_lower_bound(3, 2) == 1
    assert consolidation_lower_bound(4, 2) == 2
    assert consolidation_lower_bound(7, 3) == 3
    assert consolidation_lower_bound(2, 2) == 0
    with pytest.raises(ValueError):
        consolidation_lower_bound(2, 3)
    with pytest.raises(ValueError):
        consolidation_lower_bound(4, 0)


def test_lower_bound_is_tight_against_best_case():
    # a stage that always consolidates every triple: n -> n - n//3
    for start in (64, 43, 100):
        n, stages = start, 0
        while n > 2:
            n -= n // 3
            stages += 1
        assert consolidation_lower_bound(start, 2) <= stages


def test_end_to_end_ticks_both_accountings():
    assert end_to_end_ticks(Schedule.A) == 24
    assert end_to_end_ticks(Schedule.B) == 8
    assert end_to_end_ticks(Schedule.A, accounting="published") == 24
    assert end_to_end_ticks(Schedule.A, accounting="simulated") == 13
    assert end_to_end_ticks(Schedule.B, accounting="simulated") == 8
    with pytest.raises(ValueError):
        end_to_end_ticks(Schedule.A, accounting="guess")


def test_schedule_speedup():
    assert schedule_speedup() == 3


def test_schedule_a_hardware_estimate():
    estimate = mult_hardware_estimate(Schedule.A)
    assert estimate.csa_circuits == 1281
    assert estimate.csa_memory_entries == 10248
    assert estimate.quantizers_63_to_6 == 0
    assert estimate.total_memory_entries() == 10248
    assert estimate.ticks == 24
    # the staggered-row decomposition behind 1281
    assert sum(6 * i + 1 for i in range(21)) == 21 * 61 == 1281


def test_schedule_b_hardware_estimate():
    estimate = mult_hardware_estimate(Schedule.B)
    assert estimate.quantizers_63_to_6 == 128
    assert estimate.quantizer_memory_entries == 8192
    assert estimate.csa_circuits == 128
    assert estimate.csa_memory_entries == 1024
    assert estimate.quantizers_7_to_3 == 0  # first bank is reused
    assert estimate.ticks == 8

    dedicated = mult_hardware_estimate(Schedule.B, reuse=False)
    assert dedicated.quantizers_7_to_3 == 128
    assert dedicated.second_stage_memory_entries == 1024
    assert dedicated.total_memory_entries() == 10240


def test_hardware_estimate_is_width_64_only():
    with pytest.raises(ValueError):
        mult_hardware_estimate(Schedule.A, width=32)


def test_schedule_comparison():
    comparison = schedule_comparison()
    assert comparison.a_exclusive_csa_circuits == 1153
    assert comparison.a_exclusive_memory_entries == 9224
    assert comparison.b_quantizer_memory_entries == 8192
    assert comparison.ticks_a == 24
    assert comparison.ticks_b == 8
    assert comparison.speedup == 3


def test_cost_report_dispatch():
    cascade = cost_report(Design.CASCADE, 128)
    assert (cascade.special_and_gates, cascade.ticks) == (447, 7)
    flash_rep = cost_report(Design.FLASH, 64)
    assert (flash_rep.special_and_gates, flash_rep.ticks) == (2080, 2)
    double = cost_report(Design.FLASH_DOUBLE, 128)
    assert (double.special_and_gates, double.ticks) == (2144, 3)
    blocked = cost_report(Design.BLOCKED_DOUBLE, 128)
    assert (blocked.special_and_gates, blocked.ticks) == (1000, 3)
    mult_a = cost_report(Design.MULT_SCHEDULE_A, 64)
    assert (mult_a.memory_entries, mult_a.ticks) == (10248, 24)
    mult_b = cost_report(Design.MULT_SCHEDULE_B, 64)
    assert (mult_b.memory_entries, mult_b.ticks) == (9216, 8)
    for report in (cascade, flash_rep, double, blocked, mult_a, mult_b):
        assert report.special_and_gates >= 0
        assert report.memory_entries >= 0
        assert report.ticks >= 0


def test_cost_report_rejects_bad_widths():
    with pytest.raises(ValueError):
        cost_report(Design.CASCADE, 96)
    with pytest.raises(ValueError):
        cost_report(Design.FLASH_DOUBLE, 129)
    with pytest.raises(ValueError):
        cost_report(Design.BLOCKED_DOUBLE, 96)  # half 48 not a power of four


def test_reference_table():
    assert dict(reference_table()) == {
        "cascade_gates_width_128": 447,
        "double_width_gates_width_128": 2144,
        "blocked_gates_width_128": 1000,
        "schedule_a_csa_circuits": 1281,
        "schedule_b_quantizer_entries": 8192,
        "schedule_a_exclusive_entries": 9224,
        "consolidation_stage_lower_bound": 9,
        "schedule_a_ticks": 24,
        "schedule_b_ticks": 8,
        "schedule_speedup": 3,
    }
