"""Independent reference computations used by the tests.

Nothing here calls into the quotient engine or the Lyndon rewriting code; the
oracles are deliberately naive so that agreement is meaningful.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import sympy

from poisson_coact.free import FreePoissonElement, comm_monomials, mono_degree


def lyndon_brute(m, d):
    """Lyndon words of length ``d`` by checking every rotation of every word."""
    out = []
    for w in itertools.product(range(m), repeat=d):
        if all(w < w[i:] + w[:i] for i in range(1, d)):
            out.append(w)
    return sorted(out)


def assoc_expand(word):
    """Standard bracketing of a Lyndon word, expanded in the free associative algebra.

    Uses its own standard factorisation (longest proper Lyndon suffix).
    """
    if len(word) == 1:
        return Counter({word: 1})
    # longest proper suffix that is Lyndon
    for k in range(1, len(word)):
        v = word[k:]
        if _is_lyndon(v):
            u = word[:k]
            return assoc_commutator(assoc_expand(u), assoc_expand(v))
    raise ValueError("not a Lyndon word")


def _is_lyndon(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def assoc_commutator(x, y):
    out = Counter()
    for a, ca in x.items():
        for b, cb in y.items():
            out[a + b] += ca * cb
            out[b + a] -= ca * cb
    return Counter({k: v for k, v in out.items() if v})


def assoc_of_lie_element(el: FreePoissonElement):
    """Expand an element made of single Lie words (degree-1 commutative monomials)."""
    out = Counter()
    for m, c in el.terms.items():
        assert len(m) == 1, "expected a pure Lie element"
        for w, k in assoc_expand(m[0]).items():
            out[w] += c * k
    return Counter({k: v for k, v in out.items() if v})


# --------------------------------------------------------------------------
# naive saturation

def all_monomials(k, bound):
    return [m for d in range(bound + 1) for m in comm_monomials(k, d)]


def naive_ideal_span(relations, alphabet_size, bound):
    """Span of everything reachable from ``relations`` by multiplying with and
    bracketing against *arbitrary* monomials (not just generators), iterated to a
    fixpoint, keeping only elements of degree <= ``bound``.

    Returns ``(columns, rows)`` with rows an echelon basis (dict column -> Fraction).
    """
    cols = all_monomials(alphabet_size, bound)
    index = {m: i for i, m in enumerate(cols)}
    multipliers = [FreePoissonElement.monomial(m) for m in cols if m]
    basis = {}  # pivot column -> row (dict)

    def reduce(vec):
        vec = dict(vec)
        while vec:
            p = max(vec)
            if p not in basis:
                return vec
            c = vec[p]
            for k, v in basis[p].items():
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return vec

    def add(el):
        if el.is_zero() or el.degree() > bound:
            return None
        vec = reduce({index[m]: Fraction(c) for m, c in el.terms.items()})
        if not vec:
            return None
        p = max(vec)
        inv = 1 / vec[p]
        basis[p] = {k: v * inv for k, v in vec.items()}
        return p

    frontier = [p for p in (add(r) for r in relations) if p is not None]
    while frontier:
        new = []
        for p in frontier:
            el = FreePoissonElement({cols[k]: v for k, v in basis[p].items()})
            for mult in multipliers:
                for cand in (mult * el, mult.bracket(el)):
                    q = add(cand)
                    if q is not None:
                        new.append(q)
        frontier = new
    return cols, list(basis.values())


def filtered_ranks(cols, rows, top):
    """``dim(span ∩ F_d)`` for ``d = 0..top`` via sympy ranks.

    ``dim(S ∩ F_d) = rank(S) - rank(S projected onto monomials of degree > d)``.
    """
    if not rows:
        return [0] * (top + 1)
    M = sympy.Matrix([[r.get(i, 0) for i in range(len(cols))] for r in rows])
    total = M.rank()
    out = []
    for d in range(top + 1):
        high = [i for i, m in enumerate(cols) if mono_degree(m) > d]
        sub = M.extract(list(range(M.rows)), high) if high else sympy.zeros(M.rows, 0)
        out.append(total - (sub.rank() if high else 0))
    return out


def contains(cols, rows, el):
    """Whether ``el`` lies in the span of ``rows`` (sympy rank test)."""
    index = {m: i for i, m in enumerate(cols)}
    vec = [0] * len(cols)
    for m, c in el.terms.items():
        if m not in index:
            return False
        vec[index[m]] = c
    M = sympy.Matrix([[r.get(i, 0) for i in range(len(cols))] for r in rows] or [[0] * len(cols)])
    return M.rank() == M.col_join(sympy.Matrix([vec])).rank()


# --------------------------------------------------------------------------
# direct evaluation of low-degree free elements in a structure-constant algebra

def evaluate_in(P, el: FreePoissonElement, image):
    """Evaluate ``el`` (Lie words of length <= 2) with generator images given as
    coordinate vectors of ``P``, by multiplying out the structure constants."""
    total = [Fraction(0)] * P.dim
    for m, c in el.terms.items():
        val = list(P.basis_vector(P.unit_index))
        for w in m:
            if len(w) == 1:
                wv = image(w[0])
            elif len(w) == 2:
                wv = P.lie(image(w[0]), image(w[1]))
            else:
                raise ValueError("only words of length <= 2 are supported")
            val = P.multiply(val, wv)
        total = [t + c * v for t, v in zip(total, val)]
    return total
