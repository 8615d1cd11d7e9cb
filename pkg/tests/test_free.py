import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import assoc_commutator, assoc_expand, assoc_of_lie_element, lyndon_brute
from poisson_coact.free import (
    FreePoissonElement as E,
    TensorElement,
    comm_monomial_counts,
    comm_monomials,
    evaluate,
    fp_bracket,
    fp_degree,
    fp_mul,
    is_lyndon,
    lie_bracket,
    lyndon_basis,
    lyndon_words,
    witt_number,
)

a, b, c = E.gen(0), E.gen(1), E.gen(2)


def test_lyndon_examples():
    assert lyndon_basis(2, 1) == [(0,), (1,)]
    assert lyndon_basis(2, 2) == [(0, 1)]
    assert lyndon_basis(2, 3) == [(0, 0, 1), (0, 1, 1)]


@pytest.mark.parametrize("m,d", [(m, d) for m in range(1, 5) for d in range(1, 7) if m ** d < 5000])
def test_lyndon_matches_brute_force_and_witt(m, d):
    words = lyndon_basis(m, d)
    assert words == lyndon_brute(m, d)
    assert len(words) == witt_number(m, d)


def test_lyndon_words_degenerate():
    assert lyndon_words(0, 3) == [] and lyndon_basis(3, 0) == []


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_lie_bracket_matches_associative_commutator(m):
    # every pair of Lyndon words of total length <= 5
    words = [w for d in range(1, 5) for w in lyndon_basis(m, d)]
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) > 5:
            continue
        got = assoc_of_lie_element(lie_bracket(u, v))
        assert got == assoc_commutator(assoc_expand(u), assoc_expand(v)), (u, v)


def test_lie_bracket_examples():
    assert lie_bracket((0,), (0,)).is_zero()
    assert lie_bracket((0,), (1,)) == E.lie_monomial((0, 1))
    assert lie_bracket((1,), (0,)) == -E.lie_monomial((0, 1))


def test_lie_jacobi_exhaustive():
    words = [w for d in range(1, 3) for w in lyndon_basis(3, d)]
    for u, v, w in itertools.product(words, repeat=3):
        if len(u) + len(v) + len(w) > 4:
            continue
        U, V, W = (E.lie_monomial(x) for x in (u, v, w))
        assert (U.bracket(V.bracket(W)) + V.bracket(W.bracket(U)) + W.bracket(U.bracket(V))).is_zero()


def test_product_examples():
    x = a + 2 * b
    assert fp_mul(E.one(), x) == x
    assert (a * a).terms == {(((0,), (0,))): Fraction(1)}
    assert (a + b) * (a - b) == a * a - b * b


def test_bracket_examples():
    assert fp_bracket(a, E.one()).is_zero()
    assert a.bracket(b * c) == a.bracket(b) * c + b * a.bracket(c)
    assert (a * a).bracket(b) == 2 * a * a.bracket(b)


def test_degree_examples():
    assert fp_degree(E.zero()) == -1
    assert fp_degree(E.one()) == 0
    assert fp_degree(a * b.bracket(c)) == 3


def test_comm_monomial_counts():
    # S(free Lie) has the same graded dimension as the tensor algebra: m ** d
    for m in range(1, 5):
        counts = comm_monomial_counts(m, 5)
        assert counts == [m ** d for d in range(6)]
        assert [len(comm_monomials(m, d)) for d in range(6)] == counts


# random elements of low degree on three letters
letters = st.sampled_from([a, b, c])


@st.composite
def elements(draw, max_terms=3):
    out = E.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        kind = draw(st.integers(0, 3))
        x, y = draw(letters), draw(letters)
        term = [E.one(), x, x * y, x.bracket(y)][kind]
        out = out + term * draw(st.integers(-3, 3))
    return out


@given(elements(), elements(), elements())
def test_poisson_identities(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x.bracket(y) == -y.bracket(x)
    assert (x.bracket(y.bracket(z)) + y.bracket(z.bracket(x)) + z.bracket(x.bracket(y))).is_zero()
    assert x.bracket(y * z) == x.bracket(y) * z + y * x.bracket(z)
    assert (x * y).bracket(z) == x * y.bracket(z) + x.bracket(z) * y


@given(elements(), elements())
def test_no_stored_zeros_and_degree(x, y):
    for el in (x * y, x.bracket(y), x + y, x - x):
        assert all(v != 0 for v in el.terms.values())
    if not x.is_zero() and not y.is_zero():
        assert fp_degree(x * y) == fp_degree(x) + fp_degree(y)
    assert fp_degree(x.bracket(y)) <= max(fp_degree(x) + fp_degree(y), -1)


def test_tensor_structure():
    t = TensorElement.of(a, b)
    u = TensorElement.of(b, a)
    # [a (x) b, b (x) a] = ab (x) [b, a] + [a, b] (x) ba
    expected = TensorElement.of(a * b, b.bracket(a)) + TensorElement.of(a.bracket(b), b * a)
    assert t.bracket(u) == expected
    assert (t * u) == TensorElement.of(a * b, b * a)
    assert t.map_factor(1, lambda m: 3 if m else 1).as_element() == 3 * a


def test_evaluate_extends_homomorphically():
    # send a -> b, b -> a: the bracket [a, b] goes to [b, a] = -[a, b]
    swap = {0: b, 1: a, 2: c}
    img = evaluate(a.bracket(b) * c + 2, swap.__getitem__, E.one())
    assert img == b.bracket(a) * c + 2
