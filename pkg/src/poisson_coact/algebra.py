"""Finite-dimensional Poisson algebras given by structure constants over Q.

A basis ``x_0, ..., x_{n-1}`` is fixed with ``x_0 = 1``.  Products and brackets
are stored sparsely as ``(i, j, k) -> c`` meaning ``x_i x_j`` (resp.
``[x_i, x_j]``) has coefficient ``c`` on ``x_k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, IndexOutOfRange, InvalidAlgebra


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3"`` or ``"-2/5"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _canonical_table(table) -> dict:
    out = {}
    for key, c in table.items():
        c = as_rational(c)
        if c:
            out[tuple(int(t) for t in key)] = c
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=False)
class PoissonAlgebraData:
    """A finite-dimensional (candidate) Poisson algebra.

    Construction does not validate the axioms; use :func:`validate_poisson`.
    """

    dim: int
    basis: tuple
    mul: Mapping = field(default_factory=dict)
    bracket: Mapping = field(default_factory=dict)
    unit_index: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidAlgebra("dimension must be positive")
        basis = tuple(str(b) for b in self.basis)
        if len(basis) != self.dim:
            raise DimensionMismatch(f"{len(basis)} basis labels for dimension {self.dim}")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "mul", _canonical_table(self.mul))
        object.__setattr__(self, "bracket", _canonical_table(self.bracket))
        object.__setattr__(self, "_mul_rows", None)
        object.__setattr__(self, "_br_rows", None)

    def __eq__(self, other):
        if not isinstance(other, PoissonAlgebraData):
            return NotImplemented
        return (self.dim, self.basis, self.mul, self.bracket, self.unit_index) == (
            other.dim, other.basis, other.mul, other.bracket, other.unit_index)

    def check_indices(self):
        for name, table in (("mul", self.mul), ("bracket", self.bracket)):
            for key in table:
                if any(not 0 <= t < self.dim for t in key):
                    raise IndexOutOfRange(f"{name} entry {key} outside [0, {self.dim})")
        if not 0 <= self.unit_index < self.dim:
            raise IndexOutOfRange(f"unit index {self.unit_index} outside [0, {self.dim})")

    def _rows(self, table, attr):
        rows = getattr(self, attr)
        if rows is None:
            self.check_indices()
            rows = [[[] for _ in range(self.dim)] for _ in range(self.dim)]
            for (i, j, k), c in table.items():
                rows[i][j].append((k, c))
            object.__setattr__(self, attr, rows)
        return rows

    def mul_entries(self, i, j):
        """Nonzero ``(k, c)`` pairs of ``x_i x_j``."""
        return self._rows(self.mul, "_mul_rows")[i][j]

    def bracket_entries(self, i, j):
        return self._rows(self.bracket, "_br_rows")[i][j]

    # vector-level operations; vectors are sequences of Fractions of length dim
    def _bilinear(self, u, v, entries):
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in entries(i, j):
                    out[k] += ab * c
        return tuple(out)

    def multiply(self, u, v):
        return self._bilinear(u, v, self.mul_entries)

    def lie(self, u, v):
        return self._bilinear(u, v, self.bracket_entries)

    def basis_vector(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def zero_vector(self):
        return (Fraction(0),) * self.dim

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement(self, tuple(as_rational(c) for c in coeffs))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(self.unit_index))

    def gen(self, i) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(i))

    def index(self, label):
        try:
            return self.basis.index(label)
        except ValueError:
            raise IndexOutOfRange(f"no basis element named {label!r}") from None

    def __repr__(self):
        return f"PoissonAlgebraData(dim={self.dim}, basis={self.basis})"


@dataclass(frozen=True)
class AlgebraElement:
    """An element of a finite-dimensional Poisson algebra (coordinates in its basis)."""

    algebra: PoissonAlgebraData
    coeffs: tuple

    def __add__(self, other):
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.algebra, self.algebra.multiply(self.coeffs, other.coeffs))
        c = as_rational(other)
        return AlgebraElement(self.algebra, tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def bracket(self, other):
        return AlgebraElement(self.algebra, self.algebra.lie(self.coeffs, other.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def scalar(self) -> Fraction:
        """The single coordinate of an element of a one-dimensional algebra."""
        if self.algebra.dim != 1:
            raise DimensionMismatch("scalar() needs a one-dimensional algebra")
        return self.coeffs[0]

    def __repr__(self):
        terms = [f"{format_rational(c)}*{self.algebra.basis[k]}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def from_rules(basis: Sequence[str], products=None, brackets=None, unit=None) -> PoissonAlgebraData:
    """Build an algebra from the products/brackets of basis *labels*.

    ``products`` maps ``(a, b)`` label pairs to ``{c: coeff}``; the mirrored pair
    is filled in by symmetry (brackets by antisymmetry).  Products with the
    unit are added automatically.
    """
    basis = list(basis)
    idx = {b: i for i, b in enumerate(basis)}
    unit = basis[0] if unit is None else unit
    mul, br = {}, {}
    for j in range(len(basis)):
        mul[(idx[unit], j, j)] = Fraction(1)
        mul[(j, idx[unit], j)] = Fraction(1)
    for (a, b), image in (products or {}).items():
        for c, coeff in image.items():
            mul[(idx[a], idx[b], idx[c])] = as_rational(coeff)
            mul[(idx[b], idx[a], idx[c])] = as_rational(coeff)
    for (a, b), image in (brackets or {}).items():
        for c, coeff in image.items():
            br[(idx[a], idx[b], idx[c])] = as_rational(coeff)
            br[(idx[b], idx[a], idx[c])] = -as_rational(coeff)
    return normalize_unit(PoissonAlgebraData(len(basis), basis, mul, br, idx[unit]))


def change_basis(A: PoissonAlgebraData, new_basis, labels) -> PoissonAlgebraData:
    """Re-express ``A`` in the basis whose vectors (old coordinates) are ``new_basis``."""
    n = A.dim
    T = [[as_rational(new_basis[a][k]) for a in range(n)] for k in range(n)]
    try:
        Tinv = linalg.inverse(T)
    except ZeroDivisionError:
        raise InvalidAlgebra("new basis is not linearly independent") from None
    cols = [tuple(T[k][a] for k in range(n)) for a in range(n)]

    def recoord(v):
        return [sum(Tinv[r][k] * v[k] for k in range(n)) for r in range(n)]

    mul, br = {}, {}
    for a, b in itertools.product(range(n), repeat=2):
        for table, op in ((mul, A.multiply), (br, A.lie)):
            for c, coeff in enumerate(recoord(op(cols[a], cols[b]))):
                if coeff:
                    table[(a, b, c)] = coeff
    return PoissonAlgebraData(n, labels, mul, br, 0)


def find_unit(A: PoissonAlgebraData):
    """Coordinates of the multiplicative identity, or ``None`` if there is none."""
    n = A.dim
    # unknown u with u * x_j = x_j for every j
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([sum((c for kk, c in A.mul_entries(i, j) if kk == k), Fraction(0)) for i in range(n)])
            rhs.append(Fraction(int(j == k)))
    u = linalg.solve(rows, rhs)
    if u is None:
        return None
    for j in range(n):
        if A.multiply(A.basis_vector(j), u) != A.basis_vector(j):
            return None
    return tuple(u)


def normalize_unit(A: PoissonAlgebraData, unit=None) -> PoissonAlgebraData:
    """Return an isomorphic copy whose basis vector 0 is the identity.

    ``unit`` may name a basis label; otherwise the identity is searched for, and
    if it is not a basis vector a change of basis puts it in position 0.
    """
    A.check_indices()
    if unit is not None:
        u = A.index(unit) if isinstance(unit, str) else int(unit)
        vec = A.basis_vector(u)
        if any(A.multiply(vec, A.basis_vector(j)) != A.basis_vector(j) for j in range(A.dim)):
            raise InvalidAlgebra(f"{A.basis[u]!r} is not a multiplicative identity")
    else:
        vec = find_unit(A)
        if vec is None:
            raise InvalidAlgebra("algebra has no multiplicative identity")
    support = [k for k, c in enumerate(vec) if c]
    if len(support) == 1 and vec[support[0]] == 1:
        u = support[0]
        if u == 0 and A.unit_index == 0:
            return A
        perm = [u] + [k for k in range(A.dim) if k != u]
        where = {old: new for new, old in enumerate(perm)}
        mul = {(where[i], where[j], where[k]): c for (i, j, k), c in A.mul.items()}
        br = {(where[i], where[j], where[k]): c for (i, j, k), c in A.bracket.items()}
        return PoissonAlgebraData(A.dim, [A.basis[k] for k in perm], mul, br, 0)
    # the identity is a combination: swap it in for its first supporting vector
    p = support[0]
    new_basis = [vec] + [A.basis_vector(k) for k in range(A.dim) if k != p]
    labels = ["1"] + [A.basis[k] for k in range(A.dim) if k != p]
    return change_basis(A, new_basis, labels)


# --------------------------------------------------------------------------
# validation

@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    detail: str = ""

    def to_dict(self):
        d = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    """A list of named pass/fail checks, optionally qualified by a truncation ``(D, m)``."""

    checks: list = field(default_factory=list)
    qualifier: tuple | None = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def add(self, name, passed, witness=None, detail=""):
        self.checks.append(Check(name, bool(passed), None if passed else witness, detail))
        return self.checks[-1]

    def extend(self, other: "Report", prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))
        return self

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        d = {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if self.qualifier is not None:
            d["verified_at"] = {"degree": self.qualifier[0], "margin": self.qualifier[1]}
        return d


ValidationReport = Report


def _first_failure(tuples, ok):
    for t in tuples:
        if not ok(*t):
            return t
    return None


def validate_poisson(A: PoissonAlgebraData) -> Report:
    """Exhaustively check every Poisson algebra axiom on basis tuples.

    Each failing check carries the lexicographically first failing index tuple.
    """
    A.check_indices()
    n = A.dim
    e = [A.basis_vector(i) for i in range(n)]
    zero = A.zero_vector()
    mul, lie = A.multiply, A.lie

    def add(u, v):
        return tuple(a + b for a, b in zip(u, v))

    prod = {(i, j): mul(e[i], e[j]) for i in range(n) for j in range(n)}
    br = {(i, j): lie(e[i], e[j]) for i in range(n) for j in range(n)}
    pairs = list(itertools.product(range(n), repeat=2))
    triples = list(itertools.product(range(n), repeat=3))
    u = A.unit_index

    checks = [
        ("unitality", [(j,) for j in range(n)],
         lambda j: prod[(u, j)] == e[j] and prod[(j, u)] == e[j]),
        ("commutativity", pairs, lambda i, j: prod[(i, j)] == prod[(j, i)]),
        ("associativity", triples,
         lambda i, j, k: mul(prod[(i, j)], e[k]) == mul(e[i], prod[(j, k)])),
        ("antisymmetry", pairs,
         lambda i, j: br[(i, i)] == zero and add(br[(i, j)], br[(j, i)]) == zero),
        ("jacobi", triples,
         lambda i, j, k: add(add(lie(e[i], br[(j, k)]), lie(e[j], br[(k, i)])), lie(e[k], br[(i, j)])) == zero),
        # [x_i x_j, x_k] = x_i [x_j, x_k] + [x_i, x_k] x_j
        ("leibniz", triples,
         lambda i, j, k: lie(prod[(i, j)], e[k]) == add(mul(e[i], br[(j, k)]), mul(br[(i, k)], e[j]))),
    ]
    report = Report()
    for name, tuples, ok in checks:
        witness = _first_failure(tuples, ok)
        report.add(name, witness is None, witness)
    return report


def require_valid(A: PoissonAlgebraData, what="algebra"):
    report = validate_poisson(A)
    if not report.passed:
        bad = report.failures()[0]
        raise InvalidAlgebra(f"{what} fails {bad.name} at {bad.witness}")
    return A


def tensor_poisson(A: PoissonAlgebraData, B: PoissonAlgebraData) -> PoissonAlgebraData:
    """The tensor product Poisson algebra, basis ``x_a (x) y_b`` at index ``a*dim B + b``.

    ``(p(x)q)(r(x)s) = pr(x)qs`` and ``[p(x)q, r(x)s] = pr(x)[q,s] + [p,r](x)qs``.
    """
    nA, nB = A.dim, B.dim
    labels = [f"{a}⊗{b}" for a in A.basis for b in B.basis]
    mul, br = {}, {}
    for a1, a2 in itertools.product(range(nA), repeat=2):
        pr = A.mul_entries(a1, a2)
        lie_a = A.bracket_entries(a1, a2)
        for b1, b2 in itertools.product(range(nB), repeat=2):
            i, j = a1 * nB + b1, a2 * nB + b2
            qs = B.mul_entries(b1, b2)
            for ka, ca in pr:
                for kb, cb in qs:
                    k = (i, j, ka * nB + kb)
                    mul[k] = mul.get(k, 0) + ca * cb
                for kb, cb in B.bracket_entries(b1, b2):
                    k = (i, j, ka * nB + kb)
                    br[k] = br.get(k, 0) + ca * cb
            for ka, ca in lie_a:
                for kb, cb in qs:
                    k = (i, j, ka * nB + kb)
                    br[k] = br.get(k, 0) + ca * cb
    return PoissonAlgebraData(nA * nB, labels, mul, br, A.unit_index * nB + B.unit_index)


# --------------------------------------------------------------------------
# linear maps

@dataclass(frozen=True)
class LinearMap:
    """Column ``i`` of ``columns`` is the image of source basis vector ``i``."""

    source_dim: int
    target_dim: int
    columns: tuple

    def __post_init__(self):
        cols = tuple(tuple(as_rational(c) for c in col) for col in self.columns)
        if len(cols) != self.source_dim or any(len(c) != self.target_dim for c in cols):
            raise DimensionMismatch(
                f"matrix shape does not match {self.source_dim} -> {self.target_dim}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[int(i == j) for i in range(n)] for j in range(n)])

    @classmethod
    def from_images(cls, images: Sequence[Sequence], target_dim=None):
        images = [list(c) for c in images]
        td = target_dim if target_dim is not None else (len(images[0]) if images else 0)
        return cls(len(images), td, images)

    def entry(self, row, col) -> Fraction:
        """Coefficient of target basis ``row`` in the image of source basis ``col``."""
        return self.columns[col][row]

    def __call__(self, vec):
        if len(vec) != self.source_dim:
            raise DimensionMismatch("vector length does not match the source dimension")
        out = [Fraction(0)] * self.target_dim
        for c, col in zip(vec, self.columns):
            if c:
                for r, v in enumerate(col):
                    out[r] += c * v
        return tuple(out)

    def __matmul__(self, other):
        return compose_hom(self, other)

    def is_identity(self):
        return self.source_dim == self.target_dim and all(
            self.columns[j][i] == (i == j) for i in range(self.source_dim) for j in range(self.source_dim))


def compose_hom(f: LinearMap, g: LinearMap) -> LinearMap:
    """``f o g`` (apply ``g`` first)."""
    if g.target_dim != f.source_dim:
        raise DimensionMismatch(f"cannot compose {f.source_dim}->{f.target_dim} after {g.source_dim}->{g.target_dim}")
    return LinearMap(g.source_dim, f.target_dim, [f(col) for col in g.columns])


def hom_failure(f: LinearMap, A: PoissonAlgebraData, B: PoissonAlgebraData):
    """First violated homomorphism condition as ``(name, witness)``, or ``None``."""
    if f.source_dim != A.dim or f.target_dim != B.dim:
        raise DimensionMismatch(f"map {f.source_dim}->{f.target_dim} vs algebras {A.dim}->{B.dim}")
    if f(A.basis_vector(A.unit_index)) != B.basis_vector(B.unit_index):
        return "unit", (A.unit_index,)
    imgs = f.columns
    for i, j in itertools.product(range(A.dim), repeat=2):
        if f(A.multiply(A.basis_vector(i), A.basis_vector(j))) != B.multiply(imgs[i], imgs[j]):
            return "multiplicative", (i, j)
    for i, j in itertools.product(range(A.dim), repeat=2):
        if f(A.lie(A.basis_vector(i), A.basis_vector(j))) != B.lie(imgs[i], imgs[j]):
            return "bracket", (i, j)
    return None


def check_poisson_hom(f: LinearMap, A: PoissonAlgebraData, B: PoissonAlgebraData) -> bool:
    return hom_failure(f, A, B) is None


def isomorphic_by(A: PoissonAlgebraData, B: PoissonAlgebraData, perm: Iterable[int]) -> bool:
    """True if basis index ``i`` of ``A`` corresponding to ``perm[i]`` of ``B`` matches all constants."""
    perm = list(perm)
    mul = {(perm[i], perm[j], perm[k]): c for (i, j, k), c in A.mul.items()}
    br = {(perm[i], perm[j], perm[k]): c for (i, j, k), c in A.bracket.items()}
    return mul == dict(B.mul) and br == dict(B.bracket)
