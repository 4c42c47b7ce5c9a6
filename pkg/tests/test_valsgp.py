import random

import pytest
from hypothesis import given, strategies as st

from semigroup_forge import classify, valsgp
from semigroup_forge.errors import NoConductor
from semigroup_forge.models import GAMMA_CASES, MODELS, same_gamma
from semigroup_forge.numsgp import from_generators
from semigroup_forge.valsgp import INF, GeneratorTuple, ValueTruncation, truncation

NODE = truncation([(0, 0), (1, 1)])
TACNODE = truncation([(0, 0), (1, 1), (2, 2)])
EQUUNE = MODELS["equune"].truncation


def test_validate_examples():
    assert valsgp.validate(TACNODE).ok
    rep = valsgp.validate(truncation([(0, 0), (0, 2)]))
    assert not rep.ok and rep.get("locality").witness == ((0, 2),)
    rep = valsgp.validate(truncation([(0, 0), (1, 1), (3, 1), (2, 2)], (3, 2)))
    assert not rep.get("sm1").ok
    assert set(rep.get("sm1").witness) == {(3, 1), (2, 2)}


def test_sm2_failure_has_witness():
    # (1,2) and (1,3) agree in the first coordinate; nothing above them there
    T = truncation([(0, 0), (1, 2), (1, 3)], (2, 3))
    rep = valsgp.validate(T)
    assert not rep.get("sm2").ok and rep.get("sm2").witness


def test_chains():
    assert valsgp.saturated_chain(NODE) == [(0, 0), (1, 1)]
    assert valsgp.saturated_chain(TACNODE) == [(0, 0), (1, 1), (2, 2)]
    chain = valsgp.saturated_chain(EQUUNE)
    assert len(chain) == 5 and valsgp.is_saturated_chain(EQUUNE, chain)
    # the displayed chain is another saturated chain of the same length
    shown = [(0, 0), (1, 2), (1, 4), (2, 4), (2, 6)]
    assert valsgp.is_saturated_chain(EQUUNE, shown)
    assert not valsgp.is_saturated_chain(EQUUNE, [(0, 0), (1, 2), (2, 6)])


def test_genus_examples():
    assert valsgp.genus(EQUUNE) == 4
    assert valsgp.genus(NODE) == 1
    assert valsgp.genus(truncation([(0,) * 5, (1,) * 5])) == 4


def test_modulus_examples():
    assert valsgp.modulus(TACNODE) == from_generators([2, 5])
    assert valsgp.modulus(EQUUNE) == from_generators([3, 4, 5])
    assert valsgp.modulus(NODE) == from_generators([2, 3])
    assert valsgp.is_strict_modulus(EQUUNE) and not valsgp.is_strict_modulus(NODE)
    r3 = classify.Catalog.builtin().select(4, 3)
    strict = [e for e in r3 if e.label == "b.strict"]
    assert len(strict) == 1 and valsgp.is_strict_modulus(strict[0].truncation)


def test_branches_and_mt():
    assert valsgp.branch_genera(NODE) == [0, 0] and valsgp.is_MT(NODE)
    case7 = MODELS["7"].truncation
    assert valsgp.branch_genera(case7) == [0, 2] and not valsgp.is_MT(case7)
    T = truncation([(0, 0), (1, 4)])
    assert valsgp.branch_genera(T) == [0, 3] and valsgp.is_MT(T)


def test_canonical_form():
    assert valsgp.canonical_form(truncation([(0, 0), (2, 1)])) == truncation([(0, 0), (1, 2)])
    assert valsgp.canonical_form(TACNODE) == TACNODE
    e = [e for e in classify.Catalog.builtin().select(4, 4) if e.label == "d.iv"][0]
    orbit = valsgp.orbit(e.truncation)
    assert len({valsgp._key(valsgp.canonical_form(T)) for T in orbit}) == 1


def test_json_round_trip():
    text = EQUUNE.to_json()
    assert ValueTruncation.from_json(text) == EQUUNE
    assert '"conductor": [2, 6]' in text


def test_generator_tuple():
    g = GeneratorTuple.of(2, None)
    assert g.coords == (2, INF) and g.modulus == 2 and g.text() == "(2,∞)"
    assert g.to_json() == [2, None]
    with pytest.raises(ValueError):
        GeneratorTuple.of(None, None)


def test_span_examples():
    assert valsgp.span([(1, 1), (2, None)]) == TACNODE
    assert valsgp.span([(1, 2), (2, None), (None, 3)]) == MODELS["2"].truncation
    assert valsgp.span([(1, None), (None, 1)]) == NODE


def test_span_single_diagonal_has_no_conductor():
    # both branches are then t -> (t, t) and share every value; no finite conductor
    with pytest.raises(NoConductor):
        valsgp.span([(1, 1)], 2)


@pytest.mark.parametrize("case", GAMMA_CASES)
def test_printed_generators(case):
    m = MODELS[case]
    T = m.truncation
    assert same_gamma(valsgp.minimal_generators(T), m.printed_gamma(), T)


def test_exact_generator_text():
    assert valsgp.gamma_text(valsgp.minimal_generators(TACNODE)) == "{(1,1), (2,∞)}"
    assert valsgp.gamma_text(valsgp.minimal_generators(MODELS["7"].truncation)) == \
        "{(1,3), (2,∞), (∞,4), (∞,5)}"


def test_embedding_numbers():
    assert valsgp.embedding_number(MODELS["2"].truncation) == 3
    assert valsgp.embedding_number(MODELS["6"].truncation) == 2


@pytest.mark.parametrize("key", sorted(MODELS))
def test_round_trip_models(key):
    T = MODELS[key].truncation
    assert valsgp.validate(T).ok and valsgp.genus(T) == MODELS[key].genus
    G = valsgp.minimal_generators(T)
    assert valsgp.spans_to(G, T)
    assert valsgp.realizes(G, T)


def test_round_trip_catalog_up_to_three_branches():
    for e in classify.Catalog.builtin():
        T = e.truncation
        if not 2 <= e.r <= 3:
            continue
        G = valsgp.minimal_generators(T)
        assert valsgp.spans_to(G, T), T.label()


# ----------------------------------------------------------------- properties

ALL = [T for g in range(1, 5) for r in range(1, 5) for T in classify.enumerate_value_semigroups(g, r)]


@given(st.sampled_from(ALL), st.randoms(use_true_random=False))
def test_chain_length_is_well_defined(T, rnd):
    L = valsgp.chain_length(T)
    for _ in range(5):
        chain = valsgp.random_saturated_chain(T, random.Random(rnd.random()))
        assert len(chain) - 1 == L and valsgp.is_saturated_chain(T, chain)


@given(st.sampled_from(ALL), st.data())
def test_tropical_closure(T, data):
    pts = sorted(T.elements)
    a = data.draw(st.sampled_from(pts))
    b = data.draw(st.sampled_from(pts))
    assert T.contains(tuple(map(min, a, b)))
    assert T.contains(tuple(x + y for x, y in zip(a, b)))
    big = tuple(x + data.draw(st.integers(0, 3)) for x in T.conductor)
    assert T.contains(big)


@given(st.sampled_from(ALL), st.data())
def test_canonical_form_is_idempotent_and_invariant(T, data):
    perm = data.draw(st.permutations(range(T.r)))
    C = valsgp.canonical_form(T)
    assert valsgp.canonical_form(C) == C
    assert valsgp.canonical_form(valsgp.permute(T, perm)) == C
    assert valsgp.genus(valsgp.permute(T, perm)) == valsgp.genus(T)


def test_genus_inequality_everywhere():
    assert all(valsgp.genus_inequality(T) for T in ALL)
