import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from poisson_coact import linalg
from poisson_coact.algebra import (
    LinearMap,
    PoissonAlgebraData,
    as_rational,
    check_poisson_hom,
    compose_hom,
    find_unit,
    format_rational,
    from_rules,
    hom_failure,
    normalize_unit,
    tensor_poisson,
    validate_poisson,
)
from poisson_coact.errors import DimensionMismatch, IndexOutOfRange, InvalidAlgebra
from poisson_coact.fixtures import (
    bad_associativity,
    bad_unit_bracket,
    dual_numbers,
    field,
    square_zero_abelian,
    square_zero_lie,
)

GOOD = [field, dual_numbers, square_zero_lie, square_zero_abelian]


@pytest.mark.parametrize("make", GOOD)
def test_fixtures_validate(make):
    rep = validate_poisson(make())
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert names == ["unitality", "commutativity", "associativity", "antisymmetry", "jacobi", "leibniz"]


def test_bad_unit_bracket_witness():
    rep = validate_poisson(bad_unit_bracket())
    assert not rep.passed
    # [1 * 1, x] = [1, x] = x but 1[1, x] + [1, x]1 = 2x
    assert rep.get("leibniz").witness == (0, 0, 1)
    assert all(c.witness is not None for c in rep.failures())


def test_bad_associativity_witness():
    rep = validate_poisson(bad_associativity())
    assert rep.get("associativity").witness == (1, 1, 2)
    assert not rep.get("associativity").passed


def test_index_out_of_range():
    A = PoissonAlgebraData(2, ["1", "x"], mul={(0, 0, 0): 1, (0, 1, 5): 1})
    with pytest.raises(IndexOutOfRange):
        validate_poisson(A)


def test_no_unit():
    A = PoissonAlgebraData(2, ["a", "b"], mul={(0, 0, 0): 1})
    assert find_unit(A) is None
    with pytest.raises(InvalidAlgebra):
        normalize_unit(A)


def test_unit_moved_to_front():
    A = PoissonAlgebraData(2, ["x", "1"], mul={(1, 1, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1}, unit_index=1)
    B = normalize_unit(A)
    assert B.basis == ("1", "x") and B.unit_index == 0
    assert validate_poisson(B).passed


def test_unit_as_combination():
    # F x F with idempotents e, f: the unit e + f is not a basis vector
    A = PoissonAlgebraData(2, ["e", "f"], mul={(0, 0, 0): 1, (1, 1, 1): 1})
    B = normalize_unit(A)
    assert B.unit_index == 0 and validate_poisson(B).passed


def test_rationals():
    assert as_rational("-2/4") == Fraction(-1, 2)
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_tensor_with_field_is_identity_relabelling():
    for make in GOOD:
        A = make()
        T = tensor_poisson(A, field())
        assert T.mul == A.mul and T.bracket == A.bracket
        assert validate_poisson(T).passed


def test_dual_tensor_dual_has_zero_bracket():
    T = tensor_poisson(dual_numbers(), dual_numbers())
    assert T.dim == 4 and not T.bracket and validate_poisson(T).passed


@pytest.mark.parametrize("a,b", list(itertools.product(GOOD, repeat=2)))
def test_tensor_swap(a, b):
    A, B = a(), b()
    AB, BA = tensor_poisson(A, B), tensor_poisson(B, A)
    assert validate_poisson(AB).passed and validate_poisson(BA).passed
    swap = {i * B.dim + j: j * A.dim + i for i in range(A.dim) for j in range(B.dim)}
    moved = {(swap[i], swap[j], swap[k]): c for (i, j, k), c in AB.mul.items()}
    assert moved == dict(BA.mul)
    moved = {(swap[i], swap[j], swap[k]): c for (i, j, k), c in AB.bracket.items()}
    assert moved == dict(BA.bracket)


def test_homs():
    D = dual_numbers()
    assert check_poisson_hom(LinearMap.identity(2), D, D)
    assert not check_poisson_hom(LinearMap(2, 2, [[0, 0], [0, 0]]), D, D)
    assert check_poisson_hom(LinearMap(2, 1, [[1], [0]]), D, field())
    assert hom_failure(LinearMap(2, 2, [[0, 0], [0, 1]]), D, D)[0] == "unit"
    with pytest.raises(DimensionMismatch):
        check_poisson_hom(LinearMap.identity(3), D, D)


def test_compose():
    f = LinearMap(2, 2, [[1, 2], [3, 4]])
    swap = LinearMap(2, 2, [[0, 1], [1, 0]])
    assert compose_hom(f, LinearMap.identity(2)).columns == f.columns
    assert compose_hom(LinearMap.identity(2), f).columns == f.columns
    assert compose_hom(swap, swap).is_identity()
    with pytest.raises(DimensionMismatch):
        compose_hom(f, LinearMap.identity(3))


# homs of the square-zero algebras: x -> a x + b y, y -> c x + d y
coeff = st.integers(-2, 2)


@given(coeff, coeff, coeff, coeff, coeff, coeff, coeff, coeff)
def test_hom_closure(a, b, c, d, e, f_, g, h):
    S = square_zero_abelian()
    f = LinearMap(3, 3, [[1, 0, 0], [0, a, b], [0, c, d]])
    g2 = LinearMap(3, 3, [[1, 0, 0], [0, e, f_], [0, g, h]])
    assert check_poisson_hom(f, S, S) and check_poisson_hom(g2, S, S)
    assert check_poisson_hom(compose_hom(f, g2), S, S)
    L = square_zero_lie()
    # into the Lie fixture the bracket forces a zero determinant
    assert check_poisson_hom(f, S, L) == (a * d - b * c == 0)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_linalg_rank_matches_sympy(rows):
    assert linalg.rank([[Fraction(x) for x in r] for r in rows]) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_linalg_solve(a, b):
    x = linalg.solve(a, b)
    M = sympy.Matrix(a)
    consistent = M.rank() == M.row_join(sympy.Matrix(b)).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert all(sum(Fraction(a[i][j]) * x[j] for j in range(3)) == b[i] for i in range(3))


def test_from_rules_fills_mirrors():
    A = from_rules(["1", "x", "y"], brackets={("x", "y"): {"x": 1}})
    assert A.bracket[(2, 1, 1)] == -1 and A.mul[(1, 0, 1)] == 1
