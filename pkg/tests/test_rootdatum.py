import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chevalley.rootdatum import InvalidDatum, NotReduced, PRESETS, load_datum

PRESET_NAMES = sorted(PRESETS)
WEYL_ORDERS = {"A1-sc": 2, "A1-ad": 2, "A1xA1-sc": 4, "A2-sc": 6, "A2-ad": 6, "B2-sc": 8}


def test_a1_preset():
    rd = load_datum("A1-sc")
    assert rd.rank == 1 and rd.pair(0, rd.simple_X[0]) == 2
    assert rd.simple_X[0] == (2,)


def test_a2_cartan():
    assert load_datum("A2-sc").cartan == ((2, -1), (-1, 2))


def test_positive_offdiagonal_rejected():
    bad = "rank: 2\npairing: [[1,0],[0,1]]\nsimple_Y: [[1,0],[0,1]]\nsimple_X: [[2,1],[1,2]]\ndot: [[2,1],[1,2]]\n"
    with pytest.raises(InvalidDatum):
        load_datum(bad)


def test_bogus_preset():
    with pytest.raises(InvalidDatum):
        load_datum("bogus")


def test_custom_config_matches_preset():
    text = "rank: 2\npairing: [[1,0],[0,1]]\nsimple_Y: [[1,0],[0,1]]\nsimple_X: [[2,-1],[-1,2]]\ndot: [[2,-1],[-1,2]]\n"
    rd = load_datum(text)
    assert rd.cartan == load_datum("A2-sc").cartan
    assert sorted(rd.dominant_generators) == [(0, 1), (1, 0)]


def test_reflect_examples():
    a1, a2 = load_datum("A1-sc"), load_datum("A2-sc")
    assert a1.reflect(0, (1,)) == (-1,)
    assert a2.reflect(1, (1, 0)) == (1, 0)
    # w1 - alpha1 in fundamental-weight coordinates
    assert a2.reflect(0, (1, 0)) == (-1, 1)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_weyl_group_order_and_longest(name):
    rd = load_datum(name)
    assert len(rd.weyl_group()) == WEYL_ORDERS[name]
    w0 = rd.longest_element
    assert w0.length == max(w.length for w in rd.weyl_group())
    assert rd.braid_equal(w0.word + w0.word, ())


def test_longest_lengths():
    assert len(load_datum("A1-sc").longest_element.word) == 1
    assert len(load_datum("A2-sc").longest_element.word) == 3
    assert len(load_datum("B2-sc").longest_element.word) == 4


def test_root_sequence_a2():
    rd = load_datum("A2-sc")
    a1, a2 = rd.simple_X
    assert rd.root_sequence((0, 1, 0)) == [a1, tuple(x + y for x, y in zip(a1, a2)), a2]
    assert load_datum("A1-sc").root_sequence((0,)) == [(2,)]
    with pytest.raises(NotReduced):
        rd.root_sequence((0, 0, 1))


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_root_sequence_set_independent_of_word(name):
    rd = load_datum(name)
    w0 = rd.longest_element
    words = rd.reduced_words(w0)
    seqs = [rd.root_sequence(w) for w in words]
    ref = set(seqs[0])
    for s in seqs:
        assert set(s) == ref and len(s) == len(ref) == w0.length
    for a, b in itertools.combinations(seqs[0], 2):
        # 2x2 minors: pairwise linear independence
        assert any(a[i] * b[j] - a[j] * b[i] for i in range(rd.rank) for j in range(rd.rank)) or rd.rank == 1


def test_dominance_examples():
    a1, a2 = load_datum("A1-sc"), load_datum("A2-sc")
    assert a1.dominance_leq((0,), (2,))
    assert a2.dominance_leq((1, 0), (1, 0))
    assert not a2.dominance_leq((1, 0), (0, 1)) and not a2.dominance_leq((0, 1), (1, 0))


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=3))
def test_dominance_is_partial_order(triple):
    rd = load_datum("B2-sc")
    a, b, c = triple
    if rd.dominance_leq(a, b) and rd.dominance_leq(b, a):
        assert a == b
    if rd.dominance_leq(a, b) and rd.dominance_leq(b, c):
        assert rd.dominance_leq(a, c)


def test_braid_equal_examples():
    rd = load_datum("A2-sc")
    assert rd.braid_equal((0, 1, 0), (1, 0, 1))
    assert not rd.braid_equal((0,), (1,))
    assert rd.braid_equal((), (0, 0))


@given(st.lists(st.integers(0, 1), max_size=8), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_reflections_are_involutions(word, lam):
    rd = load_datum("B2-sc")
    for i in word:
        assert rd.reflect(i, rd.reflect(i, lam)) == lam


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_dominant_generators_span_window(name):
    rd = load_datum(name)
    gens = rd.dominant_generators
    box = range(-4, 5)
    reachable = set(rd.dominant_window(8))
    for lam in itertools.product(box, repeat=rd.rank):
        if rd.is_dominant(lam) and sum(abs(x) for x in lam) <= 3:
            assert lam in reachable, lam
