import itertools

import pytest

from schubvan.errors import MalformedInput
from schubvan.perm import (
    Permutation,
    all_perms,
    bruhat_leq,
    code_to_perm,
    compose,
    identity,
    inverse,
    lehmer_code,
    long_element,
    parse_permutation,
    rank_matrix,
    rank_matrix_to_perm,
    reduced_word,
    word_to_perm,
)


def P(text):
    return parse_permutation(text)


def brute_bruhat(n):
    """Bruhat order of S_n as the transitive closure of length-increasing transposition moves."""
    perms = all_perms(n)
    up = {w: set() for w in perms}
    for w in perms:
        for i, j in itertools.combinations(range(n), 2):
            win = list(w.window)
            win[i], win[j] = win[j], win[i]
            t = Permutation(tuple(win))
            if t.inv > w.inv:
                up[w].add(t)
    leq = {}
    for w in perms:
        seen, stack = {w}, [w]
        while stack:
            for t in up[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        leq[w] = seen
    return leq


@pytest.mark.parametrize("text,window", [("1432", (1, 4, 3, 2)), ("2,1", (2, 1)), ("3 1 2", (3, 1, 2)),
                                         ("10,9,8,7,6,5,4,3,2,1,11", tuple(range(10, 0, -1)) + (11,))])
def test_parse(text, window):
    assert P(text).window == window


@pytest.mark.parametrize("text", ["1332", "", "0", "2", "12a", "1,2,4"])
def test_parse_rejects(text):
    with pytest.raises(MalformedInput):
        P(text)


def test_str_round_trip():
    assert str(P("1432")) == "1432"
    w = Permutation(tuple(range(10, 0, -1)))
    assert P(str(w)) == w


def test_lehmer_examples():
    assert lehmer_code(P("1432")) == (0, 2, 1, 0)
    assert lehmer_code(identity(5)) == (0,) * 5
    assert lehmer_code(long_element(5)) == (4, 3, 2, 1, 0)


def test_rank_matrix_examples():
    assert rank_matrix(P("231")).entries == ((0, 0, 1), (1, 1, 2), (1, 2, 3))
    assert rank_matrix(identity(2)).entries == ((1, 1), (1, 2))
    assert rank_matrix(P("21")).entries == ((0, 1), (1, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trips(n):
    for w in all_perms(n):
        code = lehmer_code(w)
        assert sum(code) == w.inv
        assert code_to_perm(code).padded(n) == w
        assert rank_matrix_to_perm(rank_matrix(w)) == w


def test_rank_matrix_monotone():
    for w in all_perms(5):
        a = rank_matrix(w)
        assert a[5, 5] == 5
        for i in range(1, 5):
            for j in range(1, 6):
                assert 0 <= a[i + 1, j] - a[i, j] <= 1
                assert 0 <= a[j, i + 1] - a[j, i] <= 1


def test_embedding_stability():
    for w in all_perms(4):
        big = w.padded(5)
        assert big.inv == w.inv
        assert big.descents == w.descents
        assert lehmer_code(big)[:4] == lehmer_code(w)


def test_bruhat_examples():
    assert bruhat_leq(identity(3), P("231"))
    assert bruhat_leq(P("213"), P("312"))
    assert not bruhat_leq(P("321"), P("231"))
    assert bruhat_leq(P("21"), P("213"))


def test_bruhat_matches_brute_force_s4():
    leq = brute_bruhat(4)
    for u in all_perms(4):
        for w in all_perms(4):
            assert bruhat_leq(u, w) == (w in leq[u]), (u, w)


def test_group_axioms_s5():
    e = identity(5)
    for w in all_perms(5):
        assert compose(w, inverse(w)) == e
        assert compose(inverse(w), w) == e
        assert compose(w, e) == w


def test_compose_convention():
    u, v = P("231"), P("213")
    assert compose(u, v)(1) == u(v(1))
    assert compose(u, v).window == (3, 2, 1)


def test_reduced_word_examples():
    assert reduced_word(P("21")) == (1,)
    assert reduced_word(identity(4)) == ()
    assert reduced_word(P("321")) == (1, 2, 1)


def test_reduced_word_is_lex_smallest_s4():
    for w in all_perms(4):
        words = [
            word for word in itertools.product(range(1, 4), repeat=w.inv)
            if word_to_perm(word, 4) == w
        ]
        assert reduced_word(w) == min(words)


def test_reduced_word_s5():
    for w in all_perms(5):
        word = reduced_word(w)
        assert len(word) == w.inv
        assert word_to_perm(word, 5) == w


def test_descents_and_swaps():
    w = P("1432")
    assert w.descents == {2, 3}
    assert w.des == 2
    assert w.swap_positions(1).window == (4, 1, 3, 2)
    assert w.swap_values(1).window == (2, 4, 3, 1)
    assert w.trimmed() == w
    assert P("2134").trimmed() == P("21")


def test_degree_zero_rejected():
    with pytest.raises(MalformedInput):
        Permutation(())
