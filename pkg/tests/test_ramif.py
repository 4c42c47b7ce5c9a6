import pytest

from semigroup_forge import ramif
from semigroup_forge.numsgp import from_generators, natural_numbers
from semigroup_forge.sgptree import enumerate_tree


def test_r_p_examples():
    assert ramif.r_P(ramif.hyperelliptic(6), 6) == 21
    assert ramif.r_P(natural_numbers(), 9) == 0
    assert ramif.r_P(from_generators([3, 8]), 7) == 35


def test_partial_weight_examples():
    S = from_generators([3, 8])
    assert ramif.partial_weight(S, 7) == 14 == S.weight()
    assert ramif.partial_weight(natural_numbers(), 4) == 0
    # m_1..m_3 = 4, 6, 8 so r_P = 3 + 4 + 5 = 12 and W^3 = 24 - 12
    assert ramif.partial_weight(from_generators([4, 6, 13]), 3) == 12


def test_partial_weight_bounded_by_weight():
    for _, S in enumerate_tree(7):
        for n in range(1, 2 * S.genus + 3):
            w = ramif.partial_weight(S, n)
            assert w <= S.weight()
            if n >= S.genus:
                assert w == S.weight()


def test_unibranch_bound_examples():
    assert ramif.check_unibranch_bound(from_generators([2, 3]), 3)
    assert not ramif.check_unibranch_bound(ramif.hyperelliptic(5), 4)
    with pytest.raises(ValueError):
        ramif.check_unibranch_bound(from_generators([2, 3]), 2)


def test_unibranch_sweep():
    checked, failures = ramif.sweep(8)
    assert checked > 1000 and failures == []


def test_sequences():
    for g in range(1, 9):
        seq = ramif.ramification_sequences(ramif.hyperelliptic(g), 3 * g)
        assert all(seq.R[i] == min(i, g) for i in range(3 * g))
        assert all(seq.TR[i] == i * g - g * (g - 1) // 2 for i in range(g, 3 * g))
        assert all(seq.TR[i] == ramif.hyperelliptic_total(i, g) for i in range(3 * g))
    flat = ramif.ramification_sequences(natural_numbers(), 6)
    assert set(flat.R) == {0} and set(flat.TR) == {0}


def test_n_r():
    assert [ramif.N_R(g) for g in (5, 7, 8)] == [1, 8, 13]
    for g in range(3, 13):
        TR = ramif.ramification_sequences(ramif.hyperelliptic(g), g + 1).TR
        assert ramif.N_R(g) == (g - 2) * g + 1 - TR[g] == g * (g - 5) // 2 + 1


def test_threshold_formula_examples():
    assert ramif.hyperelliptic_threshold(3) == 6
    assert ramif.hyperelliptic_threshold(4) == 5
    assert ramif.hyperelliptic_threshold(10) == 6


def test_threshold_direct_small_i():
    # the closed form and the direct search agree while i <= 7
    for i in range(3, 8):
        assert ramif.hyperelliptic_threshold(i) == ramif.least_genus_within_ramification(i)


def test_profile():
    S = from_generators([3, 8])
    p = ramif.RamificationProfile.minimal(S, 4)
    assert p.orders == (0, 3, 6, 8, 9) and p.total == ramif.r_P(S, 4)
    bigger = ramif.RamificationProfile((0, 3, 7, 8, 10))
    assert bigger.dominates(p) and bigger.total > p.total
    with pytest.raises(ValueError):
        ramif.RamificationProfile((1, 2))
