"""Truncated normal forms modulo a Poisson ideal of the free Poisson algebra.

The Poisson ideal generated by a finite relation set is approximated inside the
filtration piece ``F_{D+m}`` (elements of degree <= D + m) by closing the span
of the relations under multiplication and bracketing with single generators.
The span is kept in row-echelon form for the graded order (degree first, then
lexicographic), so its intersection with ``F_D`` is spanned by the rows whose
leading monomial has degree <= D.  Those rows, fully reduced, give the normal
form map.

Relations of degree <= 1 with a generator as leading term are used first to
eliminate that generator by substitution.  This is exact: the free Poisson
algebra modulo ``h - l`` (``l`` affine-linear in the other generators) is the
free Poisson algebra on the remaining generators.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .errors import BudgetExceeded, DegreeOverflow
from .free import (
    ONE,
    FreePoissonElement,
    TensorElement,
    add_into,
    bracket_terms,
    comm_monomial_counts,
    comm_monomials,
    evaluate,
    mono_degree,
    mono_key,
    mul_terms,
    terms_degree,
)

DEFAULT_MARGIN = 2
DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    env = os.environ.get("POISSON_COACT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class RelationSet:
    alphabet_size: int
    relations: tuple

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            bad = [a for a in r.letters() if not 0 <= a < self.alphabet_size]
            if bad:
                raise ValueError(f"relation uses letters {bad} outside the alphabet")


def _lead(terms):
    return max(terms, key=mono_key)


# The closure itself works on rows keyed by the rank of each monomial in the
# elimination order, so finding a leading term is a plain max over ints.

def _reduce_full(terms, echelon):
    """Reduce every term against the pivots, highest first; returns a new row.

    Reducing tails as well as the lead keeps stored rows short, which is most
    of the cost of the closure.
    """
    done = {}
    while terms:
        lead = max(terms)
        row = echelon.get(lead)
        if row is None:
            done[lead] = terms.pop(lead)
        else:
            add_into(terms, row, -terms[lead])
    return done


def _monic(terms):
    c = terms[max(terms)]
    if c == 1:
        return terms
    inv = 1 / c
    return {m: v * inv for m, v in terms.items()}


def _interreduce(echelon):
    """Fully reduce a rank-keyed echelon basis in place (tails free of pivots)."""
    for lead in sorted(echelon):
        row = echelon[lead]
        hits = [m for m in row if m != lead and m in echelon]
        if hits:
            row = dict(row)
            for m in hits:
                add_into(row, echelon[m], -row[m])
            echelon[lead] = row
    return echelon


def _substitute_terms(terms, subs, cache):
    if not subs:
        return dict(terms)
    out = {}
    for m, c in terms.items():
        if not any(a in subs for w in m for a in w):
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
            continue
        img = evaluate(FreePoissonElement._wrap({m: Fraction(1)}),
                       lambda a: subs.get(a) or FreePoissonElement.gen(a),
                       FreePoissonElement.one(), cache)
        add_into(out, img.terms, c)
    return out


def eliminate_linear(relations):
    """Split off generators fixed by relations of degree <= 1.

    Returns ``(substitution, remaining_relations)`` where the substitution maps
    an eliminated letter to an affine-linear element in the surviving letters.
    """
    subs = {}
    rels = [dict(r.terms) for r in relations]
    while True:
        pick = None
        for r in rels:
            if r and terms_degree(r) <= 1:
                lead = _lead(r)
                if mono_degree(lead) == 1:
                    pick = (r, lead)
                    break
        if pick is None:
            break
        r, lead = pick
        letter = lead[0][0]
        c = r[lead]
        image = {m: -v / c for m, v in r.items() if m != lead}
        new = {letter: FreePoissonElement._wrap(image)}
        cache = {}
        for a in list(subs):
            subs[a] = FreePoissonElement._wrap(_substitute_terms(subs[a].terms, new, {}))
        subs.update(new)
        rels = [_substitute_terms(t, new, cache) for t in rels]
        rels = [t for t in rels if t]
    return subs, [FreePoissonElement._wrap(t) for t in rels]


class QuotientContext:
    """Normal-form data for ``F_D`` modulo the truncated saturated ideal.

    Immutable after construction apart from internal memo caches.
    """

    def __init__(self, relation_set, degree, margin, substitution, letters, basis, budget, stats):
        self.relation_set = relation_set
        self.degree = degree
        self.margin = margin
        self.substitution = substitution
        self.letters = tuple(letters)
        self.basis = basis
        self.budget = budget
        self.stats = stats
        self._word_cache = {}
        self._mono_nf = {}
        self._stable = None

    @property
    def leading_set(self):
        return frozenset(self.basis)

    def reduced_basis(self, d=None):
        """Reduced basis elements (as :class:`FreePoissonElement`), optionally of one degree."""
        leads = sorted(self.basis, key=mono_key)
        if d is not None:
            leads = [m for m in leads if mono_degree(m) == d]
        return [FreePoissonElement._wrap(dict(self.basis[m])) for m in leads]

    def _nf_terms(self, terms):
        terms = _substitute_terms(terms, self.substitution, self._word_cache)
        hits = [m for m in terms if m in self.basis]
        for m in hits:
            c = terms.get(m)
            if c:
                add_into(terms, self.basis[m], -c)
        return terms

    def normal_form(self, x: FreePoissonElement) -> FreePoissonElement:
        if x.degree() > self.degree:
            raise DegreeOverflow(f"degree {x.degree()} exceeds truncation degree {self.degree}")
        return FreePoissonElement._wrap(self._nf_terms(dict(x.terms)))

    def mono_nf(self, m) -> FreePoissonElement:
        nf = self._mono_nf.get(m)
        if nf is None:
            if mono_degree(m) > self.degree:
                raise DegreeOverflow(f"degree {mono_degree(m)} exceeds truncation degree {self.degree}")
            nf = FreePoissonElement._wrap(self._nf_terms({m: Fraction(1)}))
            self._mono_nf[m] = nf
        return nf

    def is_zero_mod(self, x: FreePoissonElement) -> bool:
        return self.normal_form(x).is_zero()

    def congruent(self, x, y) -> bool:
        return self.is_zero_mod(x - y)

    def quotient_dims(self):
        counts = comm_monomial_counts(len(self.letters), self.degree)
        for m in self.basis:
            counts[mono_degree(m)] -= 1
        return counts

    def ideal_dims(self):
        """Dimension of (computed ideal) intersected with ``F_d`` for ``d = 0..D``, full alphabet."""
        full = comm_monomial_counts(self.relation_set.alphabet_size, self.degree)
        q = self.quotient_dims()
        out, acc_f, acc_q = [], 0, 0
        for d in range(self.degree + 1):
            acc_f += full[d]
            acc_q += q[d]
            out.append(acc_f - acc_q)
        return out

    @property
    def qualifier(self):
        return (self.degree, self.margin)

    def margin_stable(self) -> bool:
        """Whether raising the margin by one leaves the quotient dimensions unchanged."""
        if self._stable is None:
            wider = saturate(self.relation_set, self.degree, self.margin + 1, self.budget)
            self._stable = wider.quotient_dims() == self.quotient_dims()
        return self._stable

    def __repr__(self):
        return (f"QuotientContext(D={self.degree}, m={self.margin}, "
                f"letters={len(self.letters)}, dims={self.quotient_dims()})")


def saturate(rels: RelationSet, degree: int, margin: int = DEFAULT_MARGIN, budget=None) -> QuotientContext:
    """Close the span of ``rels`` under generator products and brackets inside ``F_{D+m}``."""
    if degree < 0 or margin < 0:
        raise ValueError("degree and margin must be non-negative")
    budget = default_budget() if budget is None else budget
    bound = degree + margin
    subs, remaining = eliminate_linear(rels.relations)
    letters = [a for a in range(rels.alphabet_size) if a not in subs]
    count = comm_monomial_counts(len(letters), bound)[bound]
    if count > budget:
        raise BudgetExceeded(count, budget)

    for r in remaining:
        if r.degree() > bound:
            raise DegreeOverflow(f"relation of degree {r.degree()} exceeds D + m = {bound}")

    # rank every monomial of degree <= D + m; relabelling 0..k-1 to the
    # surviving letters is monotone, so words stay Lyndon and order is kept
    order = []
    for d in range(bound + 1):
        for m in comm_monomials(len(letters), d):
            order.append(tuple(tuple(letters[a] for a in w) for w in m))
    order.sort(key=mono_key)
    rank = {m: i for i, m in enumerate(order)}
    top = [mono_degree(m) < bound for m in order]

    def to_ranks(terms):
        return {rank[m]: c for m, c in terms.items()}

    # the closure runs on gmpy2 rationals; rows are handed back as Fractions
    gens = [{((a,),): mpq(1)} for a in letters]
    echelon = {}
    queue = deque(to_ranks({m: mpq(c.numerator, c.denominator) for m, c in r.terms.items()})
                  for r in remaining)
    candidates = 0
    while queue:
        t = _reduce_full(queue.popleft(), echelon)
        candidates += 1
        if not t:
            continue
        t = _monic(t)
        lead = max(t)
        echelon[lead] = t
        if top[lead]:
            tm = {order[i]: c for i, c in t.items()}
            for g in gens:
                queue.append(to_ranks(mul_terms(g, tm)))
                queue.append(to_ranks(bracket_terms(g, tm)))
    basis = {i: row for i, row in echelon.items() if mono_degree(order[i]) <= degree}
    _interreduce(basis)
    basis = {order[i]: {order[k]: Fraction(int(c.numerator), int(c.denominator)) for k, c in row.items()}
             for i, row in basis.items()}
    stats = {"candidates": candidates, "rank": len(echelon), "bound": bound}
    return QuotientContext(rels, degree, margin, subs, letters, basis, budget, stats)


def normal_form(x: FreePoissonElement, ctx: QuotientContext) -> FreePoissonElement:
    return ctx.normal_form(x)


def is_zero_mod(x: FreePoissonElement, ctx: QuotientContext) -> bool:
    return ctx.is_zero_mod(x)


def quotient_dims(ctx: QuotientContext):
    return ctx.quotient_dims()


def tensor_nf(t: TensorElement, *ctxs: QuotientContext) -> TensorElement:
    """Factorwise normal form of a tensor (one context per factor)."""
    if len(ctxs) != t.arity:
        raise ValueError("need one context per tensor factor")
    for pos, ctx in enumerate(ctxs):
        t = t.map_factor(pos, ctx.mono_nf)
    return t


def tensor2_nf(t: TensorElement, ctx_left: QuotientContext, ctx_right: QuotientContext) -> TensorElement:
    return tensor_nf(t, ctx_left, ctx_right)
