from fractions import Fraction
from math import comb

import pytest

from semigroup_forge import condcount as cc
from semigroup_forge.errors import DegenerateInput, UnknownCase
from semigroup_forge.linalg import RationalMatrix

NS = range(3, 13)


@pytest.mark.parametrize("case", cc.CASE_IDS)
def test_net_rule_matches_expected_counts(case):
    for n in NS:
        L = cc.ledger_for_case(case, n)
        assert L.net == L.raw_total - n - L.preimages == cc.EXPECTED_NET[case](n)
        assert cc.check_heuristic(L)
        assert all(v >= 0 for v in L.counts.values())


def test_ledger_examples():
    L = cc.ledger_for_case(1, 5)
    assert L.counts == {"incidence": 10, "tangency_contact": 5} and L.preimages == 2 and L.net == 8
    L = cc.ledger_for_case(7, 5)
    assert L.raw_total == 25 and L.preimages == 2 and L.net == 18
    L = cc.ledger_for_case(5, 5)
    assert L.raw_total == 20 and L.preimages == 3 and L.net == 12


def test_determinantal_credit_and_family():
    assert cc.ledger_for_case(4, 3).counts["determinantal"] == 1
    assert cc.ledger_for_case(4, 6).counts["determinantal"] == 6
    assert cc.ledger_for_case(4, 6).family_size == comb(6, 3)
    assert cc.ledger_for_case(6, 5).family_size == comb(5, 3)


def test_heuristic_examples():
    assert cc.check_heuristic(cc.ledger_for_case(1, 7), 2)
    node = cc.ledger_for_case("node", 7)
    assert node.net == node.required == 5 and cc.check_heuristic(node, 1)
    assert not cc.check_heuristic(node, 2)


def test_errors():
    with pytest.raises(UnknownCase):
        cc.ledger_for_case(8, 4)
    with pytest.raises(ValueError):
        cc.ledger_for_case(1, 2)
    with pytest.raises(ValueError):
        cc.ConditionLedger("x", 3, {"incidence": -1}, 0, 1)


def test_ledger_json_shape():
    d = cc.ledger_for_case(2, 4).to_dict()
    assert d["net"] == 10 and set(d["counts"]) == set(cc.KINDS)


def test_mt_gluing():
    for n in NS:
        assert cc.mt_gluing_net((0, 0), n) == n
        assert cc.mt_gluing_net((1, 0, 0), n) == 3 * n - 2
        assert cc.mt_gluing_net((2, 2), n) == 5 * n - 8
        for genera in [(0, 0), (1, 0, 0), (2, 2), (1, 1), (0, 0, 0, 0)]:
            assert cc.mt_gluing_net(genera, n) >= cc.mt_gluing_target(genera, n)


def test_node_matrix():
    assert cc.node_condition_matrix([2, 3], 4).rank() == 2
    pts = [Fraction(k, 7) + 2 for k in range(8)]
    assert cc.node_condition_matrix(pts, 7).rank() == 8
    assert cc.node_condition_matrix(pts + [cc.INF], 8).rank() == 9
    with pytest.raises(DegenerateInput):
        cc.node_condition_matrix([2, 2], 4)


def test_mixed_cusp_matrix():
    M = cc.mixed_cusp_matrix(2, 3, 6)
    assert M.A.shape == (5, 7) and M.A.rank() == 5
    assert M.A1.det() == 2 * 3 * (2 - 3) * (1 * 2 - 1 - 2)
    assert M.A2.det() == 4 * 9 * (2 - 3) * (2 * 2 - 1 - 2)
    same = cc.mixed_cusp_matrix([cc.INF, 0, 1], [(2, 3)], 6)
    assert same.A == M.A and M.A0().shape == (3, 5)
    with pytest.raises(DegenerateInput):
        cc.mixed_cusp_matrix(2, 2, 6)
    with pytest.raises(DegenerateInput):
        cc.mixed_cusp_matrix(1, 3, 6)
    with pytest.raises(ValueError):
        cc.mixed_cusp_matrix(2, 3, 4)


def test_simultaneous_vanishing_certificate():
    cert = cc.simultaneous_vanishing_excluded()
    assert cert.ok and all(cert.checks.values())
    assert any("not a block" in n for n in cert.notes)
    ids = cc.determinant_identities()[0]
    assert all(ids.values())


def test_confluent_vandermonde():
    assert cc.confluent_vandermonde_check([2, 5, 7, 11], [2, 2, 2, 2])
    assert cc.confluent_vandermonde_check([2, 3, 5, 7, 11], [2, 2, 1, 1, 1])
    rep = cc.confluent_vandermonde([2, 5], [1, 1])
    assert rep.ok and abs(rep.det) == 3
    with pytest.raises(DegenerateInput):
        cc.confluent_vandermonde([2, 2], [1, 1])


def test_confluent_oracle_is_independent_of_matrix():
    rep = cc.confluent_vandermonde([Fraction(1, 2), 3, -4], [2, 1, 2])
    assert rep.det == rep.oracle and rep.nonzero


def test_seed_resolution(monkeypatch):
    monkeypatch.delenv(cc.SEED_ENV, raising=False)
    assert cc.resolve_seed() == cc.DEFAULT_SEED and cc.resolve_seed(5) == 5
    monkeypatch.setenv(cc.SEED_ENV, "11")
    assert cc.resolve_seed(5) == 11


def test_rank_sweep_reports_failures():
    sweep = cc.rank_sweep("zero", lambda x: RationalMatrix([[x - x]]), 1, 1, samples=3, seed=1)
    assert not sweep.ok and len(sweep.failures) == 3 and sweep.retries == 9
    assert cc.rank_sweep("one", lambda x: RationalMatrix([[x]]), 1, 1, samples=3, seed=1).ok


def test_standard_sweeps_small():
    assert all(s.ok for s in cc.standard_rank_sweeps(samples=10, seed=3))
