import pytest
from hypothesis import given
from hypothesis import strategies as st

from fliess import Alphabet, ShapeMismatch, Word, compare_length_lex, concat, empty_word, words_up_to

X2 = Alphabet(2)
X3 = Alphabet(3)

letters2 = st.lists(st.integers(min_value=0, max_value=1), max_size=6).map(tuple)


def w(*letters, alphabet=X2):
    return Word(alphabet, letters)


def test_alphabet_must_be_nonempty():
    with pytest.raises(ValueError):
        Alphabet(0)


def test_word_rejects_out_of_range_letters():
    with pytest.raises(ValueError):
        Word(X2, (0, 2))


def test_concat_examples():
    assert concat(empty_word(X2), w(1)) == w(1)
    assert concat(w(0, alphabet=X3), w(1, 2, alphabet=X3)) == w(0, 1, 2, alphabet=X3)
    assert concat(w(1, 1), w(1)) == w(1, 1, 1)


def test_concat_rejects_alphabet_mismatch():
    with pytest.raises(ShapeMismatch):
        concat(w(1), Word(X3, (1,)))


def test_length_and_letter_counts():
    word = w(0, 1, 1)
    assert len(word) == 3
    assert word.letter_count(0) == 1
    assert word.letter_count(1) == 2
    assert len(empty_word(X2)) == 0


def test_compare_length_lex_examples():
    assert compare_length_lex(empty_word(X2), w(0)) < 0
    assert compare_length_lex(w(1), w(0, 0)) < 0
    assert compare_length_lex(w(0, 1), w(1, 0)) < 0
    assert compare_length_lex(w(1, 0), w(1, 0)) == 0


def test_words_up_to_enumeration():
    assert words_up_to(X2, 1) == [empty_word(X2), w(0), w(1)]
    assert len(words_up_to(X2, 2)) == 7
    assert words_up_to(X3, 0) == [empty_word(X3)]


def test_words_up_to_is_sorted_and_total():
    ws = words_up_to(X2, 3)
    assert len(ws) == 1 + 2 + 4 + 8
    for a, b in zip(ws, ws[1:]):
        assert compare_length_lex(a, b) < 0
        assert a < b


def test_rendering():
    assert str(empty_word(X2)) == "e"
    assert str(w(0, 1)) == "x0 x1"


@given(letters2, letters2, letters2)
def test_concat_is_associative_with_identity(a, b, c):
    wa, wb, wc = Word(X2, a), Word(X2, b), Word(X2, c)
    assert concat(concat(wa, wb), wc) == concat(wa, concat(wb, wc))
    assert concat(empty_word(X2), wa) == wa
    assert concat(wa, empty_word(X2)) == wa


@given(letters2, letters2, letters2)
def test_length_lex_is_a_total_order(a, b, c):
    wa, wb, wc = Word(X2, a), Word(X2, b), Word(X2, c)
    # antisymmetry
    if compare_length_lex(wa, wb) == 0:
        assert wa == wb
    else:
        assert compare_length_lex(wa, wb) == -compare_length_lex(wb, wa)
    # transitivity
    if compare_length_lex(wa, wb) <= 0 and compare_length_lex(wb, wc) <= 0:
        assert compare_length_lex(wa, wc) <= 0
