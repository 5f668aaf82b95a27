"""Edge-labeling code construction and the direct solve decoder."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expander_ec.expander import (
    ExpanderCode,
    erase_random,
    oracle_list_decode,
    sample_even_subgraph,
)
from expander_ec.gf2 import BitVector
from expander_ec.graphs import double_cover, make_graph
from expander_ec.inner import ErasedWord, make_code


def grid_code(n: int) -> ExpanderCode:
    return ExpanderCode(make_graph("complete_bipartite", (n,)), make_code("parity", (n,)))


GRID3 = grid_code(3)
SQUARE = (0, 1, 3, 4)  # 2x2 square in the 3x3 grid, as edge ids


def all_words_check(code: ExpanderCode) -> set[int]:
    n = code.num_coords
    return {
        w for w in range(1 << n) if code.is_codeword(BitVector(n, w))
    }


def test_grid_structure():
    assert GRID3.num_coords == 9
    assert GRID3.right_ids == ((0, 3, 6), (1, 4, 7), (2, 5, 8))
    assert GRID3.dim() == 4
    assert GRID3.rate == Fraction(4, 9)
    assert GRID3.rate >= 2 * GRID3.inner.rate - 1


def test_grid_kernel_matches_exhaustive_scan():
    scanned = all_words_check(GRID3)
    assert len(scanned) == 16
    assert {w.bits for w in GRID3.enumerate_codewords()} == scanned
    square = sum(1 << e for e in SQUARE)
    assert square in scanned
    assert 1 not in scanned


def test_tensor_dimension_formula():
    for n in (3, 4, 5):
        assert grid_code(n).dim() == (n - 1) ** 2


def test_grid_distances():
    assert GRID3.min_distance() == 4
    delta0 = GRID3.inner.delta
    assert Fraction(GRID3.min_distance(), 9) >= delta0 * delta0
    assert GRID3.second_generalized_support() == 6
    assert grid_code(4).second_generalized_support() == 6


def test_parity_rows_shape():
    rows = GRID3.parity_rows()
    assert len(rows) == 2 * 3 * (3 - 2)
    assert all(r.bit_count() == 3 for r in rows)  # even-weight check touches all slots


def test_inner_length_must_match_degree():
    with pytest.raises(ValueError, match="degree"):
        ExpanderCode(make_graph("complete_bipartite", (3,)), make_code("hamming74"))


def test_oracle_on_square_erasure():
    received = ErasedWord.erase_word(BitVector.zeros(9), SQUARE)
    space = oracle_list_decode(GRID3, received)
    assert space.dim == 1
    points = {w.bits for w in space.points()}
    assert points == {0, sum(1 << e for e in SQUARE)}


def test_oracle_row_erasure_is_unique():
    received = ErasedWord.erase_word(BitVector.zeros(9), (0, 1, 2))
    space = oracle_list_decode(GRID3, received)
    assert space.dim == 0
    assert space.offset == BitVector.zeros(9)


def test_oracle_rejects_non_codeword():
    received = ErasedWord.erase_word(BitVector(9, 1), ())
    assert oracle_list_decode(GRID3, received).empty


@given(
    st.integers(min_value=0, max_value=15),
    st.sets(st.integers(min_value=0, max_value=8), max_size=9),
)
def test_oracle_matches_codeword_filter(index, erased):
    word = list(GRID3.enumerate_codewords())[index]
    received = ErasedWord.erase_word(word, sorted(erased))
    space = oracle_list_decode(GRID3, received)
    expected = {
        c.bits for c in GRID3.enumerate_codewords() if received.agrees_with(c)
    }
    assert {w.bits for w in space.points()} == expected


def test_hamming_cover_code():
    code = ExpanderCode(double_cover(make_graph("complete", (8,))), make_code("hamming74"))
    assert code.num_coords == 56
    assert code.dim() >= 2 * Fraction(4, 7) * 56 - 56
    words = {code.sample_codeword(seed).bits for seed in range(5)}
    assert len(words) > 1
    for bits in words:
        assert code.is_codeword(BitVector(56, bits))


def test_sample_codeword_deterministic():
    assert GRID3.sample_codeword(9).bits == GRID3.sample_codeword(9).bits


def test_erase_random():
    word = BitVector.ones(20)
    received = erase_random(word, 7, seed=5)
    assert received.erased_count() == 7
    assert received.n == 20
    again = erase_random(word, 7, seed=5)
    assert again == received
    assert erase_random(word, 7, seed=6) != received


def test_even_subgraph_samples_are_codewords():
    cover = double_cover(make_graph("random_regular", (16, 4), seed=1))
    code = ExpanderCode(cover, make_code("parity", (4,)))
    seen = set()
    for seed in range(6):
        word = sample_even_subgraph(cover, seed)
        assert code.is_codeword(word)
        seen.add(word.bits)
    assert len(seen) > 1


def test_even_subgraph_spans_grid_kernel():
    cover = make_graph("complete_bipartite", (3,))
    words = {sample_even_subgraph(cover, seed).bits for seed in range(60)}
    kernel = {w.bits for w in GRID3.enumerate_codewords()}
    assert words == kernel


def test_kernel_cap():
    big = ExpanderCode(make_graph("complete_bipartite", (70,)), make_code("parity", (70,)))
    with pytest.raises(ValueError, match="kernel cap"):
        big.kernel()
