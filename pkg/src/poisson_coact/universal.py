"""The universal coacting Poisson algebra B(P, U) and its bialgebra structure.

For finite-dimensional Poisson algebras ``P`` (basis ``x_i``) and ``U`` (basis
``y_s``), ``B(P, U)`` is the free Poisson algebra on letters ``h_{s,i}`` modulo
the Poisson ideal of the relation families

* unit:      ``h_{s,0} - delta_{s,0}``
* mul:       ``sum_k alpha_ij^k h_{s,k} - sum_{l,t} gamma_lt^s h_{l,i} h_{t,j}``
* bracket:   ``sum_k beta_ij^k h_{s,k} - sum_{u,v} (gamma_uv^s [h_{u,i}, h_{v,j}] + tau_uv^s h_{u,i} h_{v,j})``

with coaction ``psi(x_i) = sum_s y_s (x) h_{s,i}``.  Letter ``h_{s,i}`` has index
``s * dim P + i``.  Every modular verdict is computed in a truncated quotient
and carries the ``(D, m)`` qualifier of its context.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    LinearMap,
    PoissonAlgebraData,
    Report,
    as_rational,
    check_poisson_hom,
    compose_hom,
    hom_failure,
    require_valid,
    tensor_poisson,
)
from .errors import (
    ConstraintViolation,
    DegreeOverflow,
    DescentFailure,
    DimensionMismatch,
    NotAHomomorphism,
)
from .fixtures import field as ground_field
from .free import (
    ONE,
    FreePoissonElement,
    TensorElement,
    comm_monomials,
    evaluate,
    mono_degree,
)
from .quotient import DEFAULT_MARGIN, QuotientContext, RelationSet, saturate, tensor_nf
from . import linalg

F = ground_field()

__all__ = [
    "Relation", "UniversalPresentation", "CoeffTensor", "GeneratorMap", "CoactionMatrix",
    "instantiate_relations", "build_universal", "psi_apply", "identity_map", "compose_maps",
    "maps_agree", "comultiplication", "counit", "verify_descent", "check_compat",
    "coassociativity", "counit_laws", "verify_bialgebra", "verify_comodule",
    "coaction_constraint_failure", "solve_coaction", "theta", "theta_inv",
    "induced_map_L", "induced_map_R", "naturality", "evaluation_map",
    "standard_monomials", "evaluation_is_isomorphism",
]


@dataclass(frozen=True)
class Relation:
    family: str  # "unit", "mul" or "bracket"
    index: tuple  # (s,) or (i, j, s)
    element: FreePoissonElement

    @property
    def label(self):
        return f"{self.family}({', '.join(map(str, self.index))})"


class UniversalPresentation:
    """Generators, relations, truncated quotient and coaction of ``B(P, U)``."""

    def __init__(self, P, U, relations, ctx: QuotientContext):
        self.P = P
        self.U = U
        self.relations = list(relations)
        self.ctx = ctx

    @property
    def n(self):
        return self.U.dim

    @property
    def alphabet_size(self):
        return self.U.dim * self.P.dim

    @property
    def degree(self):
        return self.ctx.degree

    @property
    def margin(self):
        return self.ctx.margin

    @property
    def qualifier(self):
        return self.ctx.qualifier

    def letter(self, s, i):
        return s * self.P.dim + i

    def row_col(self, letter):
        return divmod(letter, self.P.dim)

    def gen(self, s, i) -> FreePoissonElement:
        return FreePoissonElement.gen(self.letter(s, i))

    def name(self, letter):
        s, i = self.row_col(letter)
        return f"h_{s}_{i}"

    def latex_name(self, letter):
        s, i = self.row_col(letter)
        return f"h_{{{s + 1},{i + 1}}}"

    def text_name(self, letter):
        s, i = self.row_col(letter)
        return f"h[{s},{i}]"

    def generators(self):
        return [(s, i) for s in range(self.U.dim) for i in range(self.P.dim)]

    def psi(self, i):
        """Unreduced ``psi(x_i)`` as ``U (x)`` free elements."""
        return CoeffTensor(self.U, [self.gen(s, i) for s in range(self.U.dim)])

    def nf(self, x):
        return self.ctx.normal_form(x)

    def quotient_dims(self):
        return self.ctx.quotient_dims()

    def margin_stable(self):
        return self.ctx.margin_stable()

    def is_bialgebra_case(self):
        return self.P == self.U

    def __repr__(self):
        return (f"UniversalPresentation(dim P={self.P.dim}, dim U={self.U.dim}, "
                f"relations={len(self.relations)}, dims={self.quotient_dims()})")


class CoeffTensor:
    """An element of ``A (x) R`` for a finite-dimensional Poisson algebra ``A``.

    Stored as one ``R``-value per basis vector of ``A``; ``R`` is any ring type
    with ``+``, ``*`` and ``.bracket``.
    """

    __slots__ = ("algebra", "values")

    def __init__(self, algebra: PoissonAlgebraData, values):
        self.algebra = algebra
        self.values = list(values)
        if len(self.values) != algebra.dim:
            raise DimensionMismatch("one value per basis vector required")

    def _zero(self):
        return self.values[0] * 0

    def __add__(self, other):
        return CoeffTensor(self.algebra, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return CoeffTensor(self.algebra, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if not isinstance(other, CoeffTensor):
            return CoeffTensor(self.algebra, [v * other for v in self.values])
        out = [self._zero() for _ in self.values]
        for l, a in enumerate(self.values):
            for t, b in enumerate(other.values):
                entries = self.algebra.mul_entries(l, t)
                if entries:
                    ab = a * b
                    for s, c in entries:
                        out[s] = out[s] + ab * c
        return CoeffTensor(self.algebra, out)

    __rmul__ = __mul__

    def bracket(self, other):
        # [y_l (x) a, y_t (x) b] = y_l y_t (x) [a, b] + [y_l, y_t] (x) ab
        out = [self._zero() for _ in self.values]
        for l, a in enumerate(self.values):
            for t, b in enumerate(other.values):
                prod = self.algebra.mul_entries(l, t)
                lie = self.algebra.bracket_entries(l, t)
                if prod:
                    ab = a.bracket(b)
                    for s, c in prod:
                        out[s] = out[s] + ab * c
                if lie:
                    ab = a * b
                    for s, c in lie:
                        out[s] = out[s] + ab * c
        return CoeffTensor(self.algebra, out)

    def map(self, fn):
        return CoeffTensor(self.algebra, [fn(v) for v in self.values])

    def is_zero(self):
        return all(v.is_zero() for v in self.values)

    def __eq__(self, other):
        if not isinstance(other, CoeffTensor):
            return NotImplemented
        return self.algebra == other.algebra and all(a == b for a, b in zip(self.values, other.values))

    def __repr__(self):
        parts = [f"{self.algebra.basis[s]} ⊗ ({v!r})" for s, v in enumerate(self.values) if not v.is_zero()]
        return " + ".join(parts) or "0"


def _vec_to_coeff_tensor(U, values, zero):
    return CoeffTensor(U, [values.get(s, zero) for s in range(U.dim)])


# --------------------------------------------------------------------------
# relations and presentation

def instantiate_relations(P: PoissonAlgebraData, U: PoissonAlgebraData):
    """Every relation of the two families, in a fixed order, zeros included."""
    nP, nU = P.dim, U.dim

    def h(s, i):
        return FreePoissonElement.gen(s * nP + i)

    rels = []
    for s in range(nU):
        rels.append(Relation("unit", (s,), h(s, P.unit_index) - int(s == U.unit_index)))
    for i, j, s in itertools.product(range(nP), range(nP), range(nU)):
        el = FreePoissonElement.zero()
        for k, a in P.mul_entries(i, j):
            el = el + h(s, k) * a
        for l, t in itertools.product(range(nU), repeat=2):
            for ss, g in U.mul_entries(l, t):
                if ss == s:
                    el = el - (h(l, i) * h(t, j)) * g
        rels.append(Relation("mul", (i, j, s), el))
    for i, j, s in itertools.product(range(nP), range(nP), range(nU)):
        el = FreePoissonElement.zero()
        for k, b in P.bracket_entries(i, j):
            el = el + h(s, k) * b
        for u, v in itertools.product(range(nU), repeat=2):
            for ss, g in U.mul_entries(u, v):
                if ss == s:
                    el = el - h(u, i).bracket(h(v, j)) * g
            for ss, tau in U.bracket_entries(u, v):
                if ss == s:
                    el = el - (h(u, i) * h(v, j)) * tau
        rels.append(Relation("bracket", (i, j, s), el))
    return rels


def build_universal(P, U=None, degree=3, margin=DEFAULT_MARGIN, budget=None, validate=True) -> UniversalPresentation:
    """Presentation of ``B(P, U)`` (``U`` defaults to ``P``) saturated at ``(degree, margin)``."""
    U = P if U is None else U
    if degree < 1:
        raise ValueError("truncation degree must be at least 1")
    if validate:
        require_valid(P, "P")
        require_valid(U, "U")
    rels = instantiate_relations(P, U)
    rs = RelationSet(U.dim * P.dim, [r.element for r in rels if not r.element.is_zero()])
    ctx = saturate(rs, degree, margin, budget)
    return UniversalPresentation(P, U, rels, ctx)


def psi_apply(pres: UniversalPresentation, p) -> CoeffTensor:
    """``psi`` on a coefficient vector over the basis of ``P`` (normal forms applied)."""
    p = [as_rational(c) for c in p]
    if len(p) != pres.P.dim:
        raise DimensionMismatch("vector length must equal dim P")
    out = []
    for s in range(pres.U.dim):
        el = FreePoissonElement.zero()
        for i, c in enumerate(p):
            if c:
                el = el + pres.gen(s, i) * c
        out.append(pres.nf(el))
    return CoeffTensor(pres.U, out)


# --------------------------------------------------------------------------
# generator maps

class _AlgebraTarget:
    kind = "algebra"

    def __init__(self, algebra):
        self.algebra = algebra

    def one(self):
        return self.algebra.one()

    def reduce(self, v):
        return v

    def is_zero(self, v):
        return v.is_zero()


class _QuotientTarget:
    kind = "quotient"

    def __init__(self, ctx):
        self.ctx = ctx

    def one(self):
        return FreePoissonElement.one()

    def reduce(self, v):
        return self.ctx.normal_form(v)

    def is_zero(self, v):
        return self.ctx.is_zero_mod(v)


class _TensorTarget:
    kind = "tensor"

    def __init__(self, *ctxs):
        self.ctxs = ctxs

    def one(self):
        return TensorElement.one(len(self.ctxs))

    def reduce(self, v):
        return tensor_nf(v, *self.ctxs)

    def is_zero(self, v):
        return self.reduce(v).is_zero()


@dataclass
class GeneratorMap:
    """Images of the letters of a presentation, extended to a Poisson homomorphism.

    ``kind`` is ``"quotient"`` (into a truncated quotient), ``"tensor"`` (into a
    tensor power of quotients), ``"scalar"`` (into the ground field) or
    ``"algebra"`` (into a finite-dimensional Poisson algebra).
    """

    source: UniversalPresentation
    images: dict
    target: object
    kind: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.kind:
            self.kind = self.target.kind
        missing = set(range(self.source.alphabet_size)) - set(self.images)
        if missing:
            raise ValueError(f"no image for letters {sorted(missing)}")

    def one(self):
        return self.target.one()

    def __call__(self, x: FreePoissonElement):
        return evaluate(x, self.images.__getitem__, self.one(), self._cache)

    def image(self, s, i):
        return self.images[self.source.letter(s, i)]

    def reduce(self, value):
        return self.target.reduce(value)

    def is_zero(self, value):
        return self.target.is_zero(value)

    def scalar_images(self):
        """``{(s, i): Fraction}`` for scalar maps."""
        return {self.source.row_col(a): v.scalar() for a, v in self.images.items()}


def _scalar_target():
    t = _AlgebraTarget(F)
    t.kind = "scalar"
    return t


def identity_map(pres: UniversalPresentation) -> GeneratorMap:
    return GeneratorMap(pres, {a: FreePoissonElement.gen(a) for a in range(pres.alphabet_size)},
                        _QuotientTarget(pres.ctx))


def compose_maps(outer: GeneratorMap, inner: GeneratorMap) -> GeneratorMap:
    """``outer o inner``; the target of ``inner`` must be the source quotient of ``outer``."""
    if inner.kind != "quotient" or inner.target.ctx is not outer.source.ctx:
        raise DimensionMismatch("inner map must land in the source of the outer map")
    images = {a: outer.reduce(outer(v)) for a, v in inner.images.items()}
    return GeneratorMap(inner.source, images, outer.target, outer.kind)


def maps_agree(a: GeneratorMap, b: GeneratorMap) -> bool:
    """Whether two maps agree on every generator modulo the target."""
    if set(a.images) != set(b.images):
        return False
    return all(a.is_zero(a.images[k] - b.images[k]) for k in a.images)


def _require_hom(f, A, B, what):
    bad = hom_failure(f, A, B)
    if bad:
        raise NotAHomomorphism(f"{what} is not a Poisson homomorphism: {bad[0]} fails at {bad[1]}")


def comultiplication(pres: UniversalPresentation, f: LinearMap | None = None) -> GeneratorMap:
    """``Delta_f(h_{t,i}) = sum_{s,j} f_{js} h_{t,j} (x) h_{s,i}`` for ``f: U -> P``."""
    P, U = pres.P, pres.U
    if f is None:
        f = LinearMap.identity(P.dim)
    _require_hom(f, U, P, "f")
    images = {}
    for t, i in pres.generators():
        terms = {}
        for s in range(U.dim):
            for j in range(P.dim):
                c = f.entry(j, s)
                if c:
                    key = (((pres.letter(t, j),),), ((pres.letter(s, i),),))
                    terms[key] = terms.get(key, 0) + c
        images[pres.letter(t, i)] = TensorElement(2, terms)
    return GeneratorMap(pres, images, _TensorTarget(pres.ctx, pres.ctx))


def counit(pres: UniversalPresentation, g: LinearMap | None = None) -> GeneratorMap:
    """``eps_g(h_{s,i}) = g_{s,i}`` for ``g: P -> U``."""
    P, U = pres.P, pres.U
    if g is None:
        g = LinearMap.identity(P.dim)
    _require_hom(g, P, U, "g")
    images = {pres.letter(s, i): F.element([g.entry(s, i)]) for s, i in pres.generators()}
    return GeneratorMap(pres, images, _scalar_target())


def verify_descent(gmap: GeneratorMap, pres: UniversalPresentation | None = None) -> Report:
    """Check that every relation maps to zero in the target (so the map descends)."""
    pres = pres or gmap.source
    report = Report(qualifier=_qualifier_of(gmap))
    for rel in pres.relations:
        try:
            ok = gmap.is_zero(gmap(rel.element))
        except DegreeOverflow:
            raise
        report.add(f"descent:{rel.label}", ok, rel.index)
    return report


def _qualifier_of(gmap):
    t = gmap.target
    if isinstance(t, _QuotientTarget):
        return t.ctx.qualifier
    if isinstance(t, _TensorTarget):
        return t.ctxs[0].qualifier
    return gmap.source.qualifier


def _expand_factor(t: TensorElement, pos, fn) -> TensorElement:
    """Replace factor ``pos`` by ``fn(monomial)``, itself a tensor."""
    acc = {}
    arity = None
    cache = {}
    for key, c in t.terms.items():
        m = key[pos]
        if m not in cache:
            cache[m] = fn(m)
        img = cache[m]
        arity = t.arity - 1 + img.arity
        for k2, c2 in img.terms.items():
            nk = key[:pos] + k2 + key[pos + 1:]
            v = acc.get(nk, 0) + c * c2
            if v:
                acc[nk] = v
            else:
                del acc[nk]
    return TensorElement._wrap(arity if arity is not None else t.arity + 1, acc)


def _mono(m):
    return FreePoissonElement._wrap({m: Fraction(1)})


def check_compat(pres: UniversalPresentation, f: LinearMap, g: LinearMap) -> Report:
    """The two compatibility conditions between ``f: U -> P`` and ``g: P -> U``.

    ``compat-3.9``: ``psi = psi o (f o g)`` on every basis vector of ``P``;
    ``compat-3.10``: ``sum_s (g o f)_{ts} h_{s,i} == h_{t,i}`` for all ``t, i``.
    """
    P, U = pres.P, pres.U
    _require_hom(f, U, P, "f")
    _require_hom(g, P, U, "g")
    fg = compose_hom(f, g)
    gf = compose_hom(g, f)
    report = Report(qualifier=pres.qualifier)
    bad = None
    for i in range(P.dim):
        lhs = psi_apply(pres, P.basis_vector(i))
        rhs = psi_apply(pres, fg.columns[i])
        if not (lhs - rhs).map(pres.nf).is_zero():
            bad = (i,)
            break
    report.add("compat-3.9", bad is None, bad)
    bad = None
    for t, i in pres.generators():
        el = -pres.gen(t, i)
        for s in range(U.dim):
            c = gf.entry(t, s)
            if c:
                el = el + pres.gen(s, i) * c
        if not pres.ctx.is_zero_mod(el):
            bad = (t, i)
            break
    report.add("compat-3.10", bad is None, bad)
    return report


def coassociativity(pres: UniversalPresentation, delta: GeneratorMap) -> Report:
    """``(Delta (x) id) Delta == (id (x) Delta) Delta`` on generators, exactly in the free cube."""
    report = Report()
    bad = None

    def apply_delta(m):
        return delta(_mono(m))

    for a in range(pres.alphabet_size):
        d = delta.images[a]
        left = _expand_factor(d, 0, apply_delta)
        right = _expand_factor(d, 1, apply_delta)
        if left != right:
            bad = pres.row_col(a)
            break
    report.add("coassociativity", bad is None, bad, "exact on generators")
    return report


def counit_laws(pres, delta: GeneratorMap, eps: GeneratorMap) -> Report:
    """``(id (x) eps) Delta h == h`` and ``(eps (x) id) Delta h == h`` modulo the ideal."""
    report = Report(qualifier=pres.qualifier)

    def eps_mono(m):
        return eps(_mono(m)).scalar()

    for pos, name in ((1, "counit-right"), (0, "counit-left")):
        bad = None
        for a in range(pres.alphabet_size):
            reduced = delta.images[a].map_factor(pos, eps_mono)
            el = reduced.as_element() - FreePoissonElement.gen(a)
            if not pres.ctx.is_zero_mod(el):
                bad = pres.row_col(a)
                break
        report.add(name, bad is None, bad)
    return report


def verify_bialgebra(pres: UniversalPresentation, f: LinearMap | None = None, g: LinearMap | None = None) -> Report:
    """Coalgebra axioms of ``(B(P, U), Delta_f, eps_g)`` at the presentation's truncation."""
    if f is None or g is None:
        if pres.P.dim != pres.U.dim:
            raise DimensionMismatch("f and g are required unless P = U")
        f = f or LinearMap.identity(pres.P.dim)
        g = g or LinearMap.identity(pres.P.dim)
    report = Report(qualifier=pres.qualifier)
    report.extend(check_compat(pres, f, g))
    delta = comultiplication(pres, f)
    eps = counit(pres, g)
    report.extend(coassociativity(pres, delta))
    report.extend(verify_descent(delta, pres), "delta-")
    report.extend(verify_descent(eps, pres), "epsilon-")
    report.extend(counit_laws(pres, delta, eps))
    report.add("delta-homomorphism", True, detail="structural: extension of generator images")
    report.add("epsilon-homomorphism", True, detail="structural: extension of generator images")
    return report


def verify_comodule(pres: UniversalPresentation, f: LinearMap | None = None, g: LinearMap | None = None) -> Report:
    """``psi`` is a Poisson homomorphism; with ``P = U`` (or given ``f, g``) also a coaction."""
    P, U = pres.P, pres.U
    report = Report(qualifier=pres.qualifier)

    def reduced_zero(ct):
        return ct.map(pres.nf).is_zero()

    one = psi_apply(pres, P.basis_vector(P.unit_index))
    expect = CoeffTensor(U, [FreePoissonElement.one() if s == U.unit_index else FreePoissonElement.zero()
                             for s in range(U.dim)])
    report.add("psi-unit", (one - expect).is_zero(), (P.unit_index,))
    for name, vec_op, op in (("psi-multiplicative", P.multiply, lambda a, b: a * b),
                             ("psi-bracket", P.lie, lambda a, b: a.bracket(b))):
        bad = None
        for i, j in itertools.product(range(P.dim), repeat=2):
            lhs = psi_apply(pres, vec_op(P.basis_vector(i), P.basis_vector(j)))
            rhs = op(pres.psi(i), pres.psi(j))
            if not reduced_zero(lhs - rhs):
                bad = (i, j)
                break
        report.add(name, bad is None, bad)

    if f is None and g is None and P != U:
        return report
    f = f or LinearMap.identity(P.dim)
    g = g or LinearMap.identity(P.dim)
    delta = comultiplication(pres, f)
    eps = counit(pres, g)
    # (1 (x) Delta) psi == ((psi o f) (x) 1) psi, compared in U (x) B (x) B
    bad = None
    for i in range(P.dim):
        for t in range(U.dim):
            lhs = delta.images[pres.letter(t, i)]
            rhs = TensorElement.zero(2)
            for s in range(U.dim):
                fy = f.columns[s]
                for j, c in enumerate(fy):
                    if c:
                        rhs = rhs + TensorElement.of(pres.gen(t, j), pres.gen(s, i)) * c
            if not tensor_nf(lhs - rhs, pres.ctx, pres.ctx).is_zero():
                bad = (i, t)
                break
        if bad:
            break
    report.add("coaction-coassociative", bad is None, bad)
    # (1 (x) eps) psi == g as a map P -> U
    bad = None
    for i in range(P.dim):
        got = tuple(eps(pres.gen(s, i)).scalar() for s in range(U.dim))
        if got != g.columns[i]:
            bad = (i,)
            break
    report.add("coaction-counital", bad is None, bad)
    return report


# --------------------------------------------------------------------------
# universal property

@dataclass
class CoactionMatrix:
    """Entries ``d[s][i]`` in a target ``Q`` describing ``x_i -> sum_s y_s (x) d[s][i]``."""

    entries: list

    @classmethod
    def from_linear_map(cls, f: LinearMap, U: PoissonAlgebraData, Q: PoissonAlgebraData):
        """Read ``d_{s,i}`` from ``f: P -> U (x) Q`` (basis ``y_s (x) q`` at ``s * dim Q + q``)."""
        if f.target_dim != U.dim * Q.dim:
            raise DimensionMismatch("f must land in U (x) Q")
        return cls([[Q.element(f.columns[i][s * Q.dim:(s + 1) * Q.dim]) for i in range(f.source_dim)]
                    for s in range(U.dim)])

    @classmethod
    def from_scalars(cls, rows):
        """Entries in the ground field from a nested list ``rows[s][i]``."""
        return cls([[F.element([as_rational(c)]) for c in row] for row in rows])

    def to_linear_map(self, U: PoissonAlgebraData, Q: PoissonAlgebraData) -> LinearMap:
        ncols = len(self.entries[0])
        cols = []
        for i in range(ncols):
            col = []
            for s in range(U.dim):
                col.extend(self.entries[s][i].coeffs)
            cols.append(col)
        return LinearMap(ncols, U.dim * Q.dim, cols)

    def entry(self, s, i):
        return self.entries[s][i]

    def __eq__(self, other):
        if not isinstance(other, CoactionMatrix):
            return NotImplemented
        return all(
            a == b if not hasattr(a, "terms") else (a - b).is_zero()
            for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        ) and len(self.entries) == len(other.entries)


def _as_target(Q):
    if isinstance(Q, PoissonAlgebraData):
        return _AlgebraTarget(Q)
    if isinstance(Q, UniversalPresentation):
        return _QuotientTarget(Q.ctx)
    if isinstance(Q, QuotientContext):
        return _QuotientTarget(Q)
    raise TypeError(f"unsupported target {Q!r}")


def coaction_constraint_failure(pres: UniversalPresentation, target, dmat: CoactionMatrix):
    """First violated constraint on ``d`` as ``(family, witness)``, or ``None``.

    The constraints say ``x_i -> sum_s y_s (x) d_{s,i}`` is a Poisson homomorphism.
    """
    P, U = pres.P, pres.U
    d = dmat.entries
    if len(d) != U.dim or any(len(row) != P.dim for row in d):
        raise DimensionMismatch(f"coaction matrix must be {U.dim} x {P.dim}")
    one = target.one()
    for s in range(U.dim):
        expect = one if s == U.unit_index else one * 0
        if not target.is_zero(d[s][P.unit_index] - expect):
            return "unit", (s,)
    for i, j, s in itertools.product(range(P.dim), range(P.dim), range(U.dim)):
        val = one * 0
        for k, a in P.mul_entries(i, j):
            val = val + d[s][k] * a
        for l, t in itertools.product(range(U.dim), repeat=2):
            for ss, c in U.mul_entries(l, t):
                if ss == s:
                    val = val - (d[l][i] * d[t][j]) * c
        if not target.is_zero(val):
            return "mul", (i, j, s)
    for i, j, s in itertools.product(range(P.dim), range(P.dim), range(U.dim)):
        val = one * 0
        for k, b in P.bracket_entries(i, j):
            val = val + d[s][k] * b
        for u, v in itertools.product(range(U.dim), repeat=2):
            for ss, c in U.mul_entries(u, v):
                if ss == s:
                    val = val - d[u][i].bracket(d[v][j]) * c
            for ss, c in U.bracket_entries(u, v):
                if ss == s:
                    val = val - (d[u][i] * d[v][j]) * c
        if not target.is_zero(val):
            return "bracket", (i, j, s)
    return None


def solve_coaction(pres: UniversalPresentation, Q, dmat: CoactionMatrix):
    """The unique ``g: B(P, U) -> Q`` with ``(1 (x) g) psi = f``, where ``f`` is given by ``dmat``.

    Returns ``(g, report)``.  Raises :class:`ConstraintViolation` (naming the
    family and ``(i, j, s)``) when ``dmat`` does not define a homomorphism.
    """
    target = _as_target(Q)
    bad = coaction_constraint_failure(pres, target, dmat)
    if bad:
        raise ConstraintViolation(*bad)
    report = Report(qualifier=pres.qualifier if target.kind == "quotient" else None)
    report.add("constraints", True)
    if isinstance(Q, PoissonAlgebraData):
        f = dmat.to_linear_map(pres.U, Q)
        report.add("f-is-homomorphism", check_poisson_hom(f, pres.P, tensor_poisson(pres.U, Q)))
    images = {pres.letter(s, i): dmat.entries[s][i] for s, i in pres.generators()}
    g = GeneratorMap(pres, images, target)
    report.extend(verify_descent(g, pres))
    report.add("uniqueness", True, detail="structural: the generators h_{s,i} generate B(P, U)")
    if not report.passed:
        raise DescentFailure(f"relations do not vanish: {[c.name for c in report.failures()]}")
    return g, report


def theta(pres: UniversalPresentation, Q, g: GeneratorMap) -> CoactionMatrix:
    """``(1_U (x) g) o psi``, read off as the matrix ``d_{s,i} = g(psi-coefficient)``."""
    rep = verify_descent(g, pres)
    if not rep.passed:
        raise DescentFailure(f"{rep.failures()[0].name} does not vanish in the target")
    entries = []
    for s in range(pres.U.dim):
        row = []
        for i in range(pres.P.dim):
            coeff = psi_apply(pres, pres.P.basis_vector(i)).values[s]
            row.append(g.reduce(g(coeff)))
        entries.append(row)
    return CoactionMatrix(entries)


def theta_inv(pres: UniversalPresentation, Q, dmat: CoactionMatrix) -> GeneratorMap:
    return solve_coaction(pres, Q, dmat)[0]


def induced_map_L(pres_X: UniversalPresentation, pres_Y: UniversalPresentation, f: LinearMap) -> GeneratorMap:
    """``L(f, U): B(X, U) -> B(Y, U)``, ``h_{s,i} -> sum_j f_{ji} h'_{s,j}``."""
    if pres_X.U != pres_Y.U:
        raise DimensionMismatch("both presentations must share U")
    _require_hom(f, pres_X.P, pres_Y.P, "f")
    images = {}
    for s, i in pres_X.generators():
        el = FreePoissonElement.zero()
        for j in range(pres_Y.P.dim):
            c = f.entry(j, i)
            if c:
                el = el + pres_Y.gen(s, j) * c
        images[pres_X.letter(s, i)] = el
    gmap = GeneratorMap(pres_X, images, _QuotientTarget(pres_Y.ctx))
    _require_descent(gmap, pres_X)
    return gmap


def induced_map_R(pres_A: UniversalPresentation, pres_B: UniversalPresentation, f: LinearMap) -> GeneratorMap:
    """``R(P, f): B(P, A) -> B(P, B)`` for ``f: B -> A``, ``h_{u,i} -> sum_v f_{uv} k_{v,i}``."""
    if pres_A.P != pres_B.P:
        raise DimensionMismatch("both presentations must share P")
    _require_hom(f, pres_B.U, pres_A.U, "f")
    images = {}
    for u, i in pres_A.generators():
        el = FreePoissonElement.zero()
        for v in range(pres_B.U.dim):
            c = f.entry(u, v)
            if c:
                el = el + pres_B.gen(v, i) * c
        images[pres_A.letter(u, i)] = el
    gmap = GeneratorMap(pres_A, images, _QuotientTarget(pres_B.ctx))
    _require_descent(gmap, pres_A)
    return gmap


def _require_descent(gmap, pres):
    rep = verify_descent(gmap, pres)
    if not rep.passed:
        raise DescentFailure(f"{rep.failures()[0].name} does not vanish in the target")


def naturality(pres_X: UniversalPresentation, pres_Xp: UniversalPresentation, f: LinearMap,
               Q, t: GeneratorMap) -> bool:
    """Naturality of theta in the first variable for ``f: X' -> X`` and ``t: B(X, U) -> Q``.

    Compares ``theta_X(t) o f`` with ``theta_X'(t o L(f, U))`` as maps ``X' -> U (x) Q``.
    """
    lhs_full = theta(pres_X, Q, t)
    lhs = []
    for s in range(pres_X.U.dim):
        row = []
        for j in range(pres_Xp.P.dim):
            acc = t.one() * 0
            for i in range(pres_X.P.dim):
                c = f.entry(i, j)
                if c:
                    acc = acc + lhs_full.entries[s][i] * c
            row.append(t.reduce(acc))
        lhs.append(row)
    fbar = induced_map_L(pres_Xp, pres_X, f)
    composite = compose_maps(t, fbar)
    rhs = theta(pres_Xp, Q, composite)
    return all(t.is_zero(a - b) for ra, rb in zip(lhs, rhs.entries) for a, b in zip(ra, rb))


# --------------------------------------------------------------------------
# B(P, F) = P

def evaluation_map(pres: UniversalPresentation) -> GeneratorMap:
    """For ``U = F``: the map ``h_{0,i} -> x_i`` into ``P``."""
    if pres.U.dim != 1:
        raise DimensionMismatch("the evaluation map needs U = F")
    images = {pres.letter(0, i): pres.P.gen(i) for i in range(pres.P.dim)}
    return GeneratorMap(pres, images, _AlgebraTarget(pres.P))


def standard_monomials(ctx: QuotientContext):
    """Monomials in the surviving letters of degree <= D that are not leading monomials."""
    out = []
    k = len(ctx.letters)
    for d in range(ctx.degree + 1):
        for m in comm_monomials(k, d):
            mm = tuple(sorted(tuple(ctx.letters[a] for a in w) for w in m)) if m else m
            # relabelling letters monotonically keeps words Lyndon and order intact
            if mm not in ctx.basis:
                out.append(mm)
    return out


def evaluation_is_isomorphism(pres: UniversalPresentation) -> bool:
    """Whether ``h_{0,i} -> x_i`` maps the standard monomials to a basis of ``P``."""
    ev = evaluation_map(pres)
    std = standard_monomials(pres.ctx)
    if len(std) != pres.P.dim:
        return False
    rows = [ev(_mono(m)).coeffs for m in std]
    return linalg.rank(rows) == pres.P.dim
