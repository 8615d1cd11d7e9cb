"""Exact arithmetic in the free Poisson algebra on a finite ordered alphabet.

The free Poisson algebra is the symmetric algebra on the free Lie algebra.
Letters are non-negative ints.  The free Lie algebra is written in the Lyndon
basis: a Lyndon word ``w`` stands for its standard bracketing ``P(w)``.
A commutative monomial is a sorted tuple of Lyndon words (the empty tuple is
the unit) and an element is a sparse ``{monomial: Fraction}`` dict.

Degree is total word length: letters have degree 1, products and brackets add.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb

ONE = ()


# --------------------------------------------------------------------------
# Lyndon words

def is_lyndon(word) -> bool:
    word = tuple(word)
    return bool(word) and all(word < word[i:] for i in range(1, len(word)))


def lyndon_words(alphabet_size: int, max_degree: int):
    """All Lyndon words of length <= ``max_degree``, in lexicographic order (Duval)."""
    if alphabet_size < 1 or max_degree < 1:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_degree:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
    return out


def lyndon_basis(alphabet_size: int, degree: int):
    """Lyndon words of exactly ``degree`` letters, lexicographically ordered."""
    if alphabet_size < 1 or degree < 1:
        return []
    return [w for w in lyndon_words(alphabet_size, degree) if len(w) == degree]


def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt_number(alphabet_size: int, degree: int) -> int:
    """Dimension of the degree-``degree`` part of the free Lie algebra."""
    total = sum(_mobius(e) * alphabet_size ** (degree // e)
                for e in range(1, degree + 1) if degree % e == 0)
    return total // degree


def comm_monomial_counts(alphabet_size: int, max_degree: int):
    """Number of commutative monomials in each degree ``0..max_degree``.

    Coefficients of ``prod_d (1 - t^d)^(-witt(d))``.
    """
    counts = [1] + [0] * max_degree
    for d in range(1, max_degree + 1):
        L = witt_number(alphabet_size, d)
        if not L:
            continue
        new = [0] * (max_degree + 1)
        for base, c in enumerate(counts):
            if not c:
                continue
            for k in range(0, (max_degree - base) // d + 1):
                new[base + k * d] += c * comb(L + k - 1, k)
        counts = new
    return counts


def comm_monomials(alphabet_size: int, degree: int):
    """All commutative monomials of exactly ``degree``, in increasing monomial order."""
    words = lyndon_words(alphabet_size, degree) if degree else []
    words.sort()
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(words)):
            w = words[idx]
            if len(w) <= remaining:
                acc.append(w)
                rec(idx, remaining - len(w), acc)
                acc.pop()

    rec(0, degree, [])
    out.sort()
    return out


@lru_cache(maxsize=None)
def standard_factorization(word):
    """``(u, v)`` with ``v`` the longest proper Lyndon suffix of the Lyndon word ``word``."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word} has no standard factorization")


@lru_cache(maxsize=None)
def bracket_words(u, v):
    """``[P(u), P(v)]`` in the Lyndon basis, as a sorted tuple of ``(word, int)``."""
    if u == v:
        return ()
    if u > v:
        return tuple((w, -c) for w, c in bracket_words(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, 1),)
    # [[u1, u2], v] = [u1, [u2, v]] + [[u1, v], u2]
    u1, u2 = standard_factorization(u)
    acc = Counter()
    for w, c in bracket_words(u2, v):
        for w2, c2 in bracket_words(u1, w):
            acc[w2] += c * c2
    for w, c in bracket_words(u1, v):
        for w2, c2 in bracket_words(w, u2):
            acc[w2] += c * c2
    return tuple(sorted((w, c) for w, c in acc.items() if c))


# --------------------------------------------------------------------------
# monomials

def mono_degree(m) -> int:
    return sum(map(len, m))


def mono_key(m):
    """Sort key of the elimination order: degree first, then lexicographic."""
    return (mono_degree(m), m)


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def _remove_one(m, w):
    i = m.index(w)
    return m[:i] + m[i + 1:]


@lru_cache(maxsize=1 << 20)
def bracket_monos(a, b):
    """Biderivation bracket of two commutative monomials, as ``((mono, int), ...)``."""
    if not a or not b:
        return ()
    acc = Counter()
    ca, cb = Counter(a), Counter(b)
    for wa, ma in ca.items():
        ra = _remove_one(a, wa)
        for wb, mb in cb.items():
            rest = mono_mul(ra, _remove_one(b, wb))
            for w, c in bracket_words(wa, wb):
                acc[tuple(sorted(rest + (w,)))] += ma * mb * c
    return tuple((m, c) for m, c in acc.items() if c)


# --------------------------------------------------------------------------
# raw term-dict arithmetic (hot paths of the quotient engine use these directly)

def add_into(acc, terms, scale=1):
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def mul_terms(x, y):
    acc = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            m = mono_mul(ma, mb)
            v = acc.get(m, 0) + ca * cb
            if v:
                acc[m] = v
            else:
                del acc[m]
    return acc


def bracket_terms(x, y):
    acc = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            cab = ca * cb
            for m, c in bracket_monos(ma, mb):
                v = acc.get(m, 0) + cab * c
                if v:
                    acc[m] = v
                else:
                    del acc[m]
    return acc


def terms_degree(terms) -> int:
    return max((mono_degree(m) for m in terms), default=-1)


# --------------------------------------------------------------------------

class FreePoissonElement:
    """A sparse element of the free Poisson algebra.

    ``*`` is the commutative product (or scaling by a rational) and
    :meth:`bracket` the Poisson bracket.  Zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(tuple(w) for w in m)] = c

    @classmethod
    def _wrap(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls):
        return cls._wrap({})

    @classmethod
    def one(cls):
        return cls.scalar(1)

    @classmethod
    def scalar(cls, c):
        c = Fraction(c)
        return cls._wrap({ONE: c} if c else {})

    @classmethod
    def gen(cls, letter: int):
        return cls._wrap({((letter,),): Fraction(1)})

    @classmethod
    def lie_monomial(cls, word):
        word = tuple(word)
        if not is_lyndon(word):
            raise ValueError(f"{word} is not a Lyndon word")
        return cls._wrap({(word,): Fraction(1)})

    @classmethod
    def monomial(cls, mono, coeff=1):
        return cls({tuple(sorted(tuple(w) for w in mono)): coeff})

    def copy(self):
        return FreePoissonElement._wrap(dict(self.terms))

    def __add__(self, other):
        if not isinstance(other, FreePoissonElement):
            other = FreePoissonElement.scalar(other)
        return FreePoissonElement._wrap(add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, FreePoissonElement):
            other = FreePoissonElement.scalar(other)
        return FreePoissonElement._wrap(add_into(dict(self.terms), other.terms, -1))

    def __rsub__(self, other):
        return FreePoissonElement.scalar(other) - self

    def __neg__(self):
        return FreePoissonElement._wrap({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreePoissonElement):
            return FreePoissonElement._wrap(mul_terms(self.terms, other.terms))
        c = Fraction(other)
        if not c:
            return FreePoissonElement.zero()
        return FreePoissonElement._wrap({m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = FreePoissonElement.one()
        for _ in range(k):
            out = out * self
        return out

    def bracket(self, other):
        return FreePoissonElement._wrap(bracket_terms(self.terms, other.terms))

    def degree(self) -> int:
        return terms_degree(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FreePoissonElement.scalar(other)
        if not isinstance(other, FreePoissonElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def monomials(self):
        return sorted(self.terms, key=mono_key, reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=mono_key) if self.terms else None

    def letters(self):
        return sorted({a for m in self.terms for w in m for a in w})

    def render(self, name=None, latex=False) -> str:
        return render_terms(self.terms, name, latex)

    def __repr__(self):
        return self.render()


def fp_mul(x: FreePoissonElement, y: FreePoissonElement) -> FreePoissonElement:
    return x * y


def fp_bracket(x: FreePoissonElement, y: FreePoissonElement) -> FreePoissonElement:
    return x.bracket(y)


def fp_degree(x: FreePoissonElement) -> int:
    return x.degree()


def lie_bracket(a, b) -> FreePoissonElement:
    """Bracket of two Lyndon words, each wrapped as a singleton monomial."""
    return FreePoissonElement._wrap({(w,): Fraction(c) for w, c in bracket_words(tuple(a), tuple(b))})


# --------------------------------------------------------------------------
# rendering

def _default_name(letter):
    return f"h{letter}"


def render_word(word, name=None, latex=False):
    name = name or _default_name
    if len(word) == 1:
        return name(word[0])
    u, v = standard_factorization(word)
    inner = f"{render_word(u, name, latex)}, {render_word(v, name, latex)}"
    return f"\\{{{inner}\\}}" if latex else f"[{inner}]"


def render_mono(m, name=None, latex=False):
    parts = []
    for w, k in itertools.groupby(m):
        k = len(list(k))
        s = render_word(w, name, latex)
        if k > 1:
            s = f"{s}^{{{k}}}" if latex else f"{s}^{k}"
        parts.append(s)
    return (" " if latex else "*").join(parts)


def _fmt_coeff(c: Fraction, latex):
    if c.denominator == 1:
        return str(c.numerator)
    if latex:
        return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
    return f"{c.numerator}/{c.denominator}"


def render_terms(terms, name=None, latex=False) -> str:
    if not terms:
        return "0"
    out = []
    for m in sorted(terms, key=mono_key, reverse=True):
        c = terms[m]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = _fmt_coeff(a, latex)
        elif a == 1:
            body = render_mono(m, name, latex)
        else:
            body = f"{_fmt_coeff(a, latex)}{' ' if latex else '*'}{render_mono(m, name, latex)}"
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# --------------------------------------------------------------------------
# tensor powers of the free Poisson algebra

class TensorElement:
    """A sparse element of a ``k``-fold tensor power of the free Poisson algebra.

    Keys are ``k``-tuples of commutative monomials.  The Poisson structure is
    the iterated tensor-product one: products factorwise and
    ``[a1 (x) ... (x) ak, b1 (x) ... (x) bk] = sum_i a1 b1 (x) ... [ai, bi] ... (x) ak bk``.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = arity
        self.terms = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(k) != arity:
                    raise ValueError("key arity mismatch")
                self.terms[k] = c

    @classmethod
    def _wrap(cls, arity, terms):
        obj = cls.__new__(cls)
        obj.arity = arity
        obj.terms = terms
        return obj

    @classmethod
    def of(cls, *factors):
        """Tensor product ``f1 (x) f2 (x) ...`` of free Poisson elements."""
        terms = {(): Fraction(1)}
        for f in factors:
            nxt = {}
            for key, c in terms.items():
                for m, v in f.terms.items():
                    nxt[key + (m,)] = c * v
            terms = nxt
        return cls._wrap(len(factors), terms)

    @classmethod
    def one(cls, arity):
        return cls._wrap(arity, {(ONE,) * arity: Fraction(1)})

    @classmethod
    def zero(cls, arity):
        return cls._wrap(arity, {})

    def __add__(self, other):
        return TensorElement._wrap(self.arity, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        return TensorElement._wrap(self.arity, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return TensorElement._wrap(self.arity, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            acc = {}
            for ka, ca in self.terms.items():
                for kb, cb in other.terms.items():
                    key = tuple(mono_mul(a, b) for a, b in zip(ka, kb))
                    v = acc.get(key, 0) + ca * cb
                    if v:
                        acc[key] = v
                    else:
                        del acc[key]
            return TensorElement._wrap(self.arity, acc)
        c = Fraction(other)
        if not c:
            return TensorElement.zero(self.arity)
        return TensorElement._wrap(self.arity, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def bracket(self, other):
        acc = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                prods = [mono_mul(a, b) for a, b in zip(ka, kb)]
                cab = ca * cb
                for pos in range(self.arity):
                    for m, c in bracket_monos(ka[pos], kb[pos]):
                        key = tuple(prods[:pos]) + (m,) + tuple(prods[pos + 1:])
                        v = acc.get(key, 0) + cab * c
                        if v:
                            acc[key] = v
                        else:
                            del acc[key]
        return TensorElement._wrap(self.arity, acc)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def factor_degrees(self):
        return tuple(max((mono_degree(k[p]) for k in self.terms), default=-1) for p in range(self.arity))

    def map_factor(self, pos, fn):
        """Apply a linear map to tensor factor ``pos``.

        ``fn(monomial)`` returns a :class:`FreePoissonElement` (factor replaced)
        or a scalar (factor contracted away, lowering the arity).
        """
        acc = {}
        cache = {}
        contract = None
        for key, c in self.terms.items():
            m = key[pos]
            if m not in cache:
                cache[m] = fn(m)
            img = cache[m]
            if isinstance(img, FreePoissonElement):
                contract = False
                for m2, c2 in img.terms.items():
                    nk = key[:pos] + (m2,) + key[pos + 1:]
                    v = acc.get(nk, 0) + c * c2
                    if v:
                        acc[nk] = v
                    else:
                        del acc[nk]
            else:
                contract = True
                c2 = Fraction(img)
                if c2:
                    nk = key[:pos] + key[pos + 1:]
                    v = acc.get(nk, 0) + c * c2
                    if v:
                        acc[nk] = v
                    else:
                        del acc[nk]
        arity = self.arity - 1 if contract else self.arity
        if contract is None:
            probe = fn(ONE)
            arity = self.arity if isinstance(probe, FreePoissonElement) else self.arity - 1
        return TensorElement._wrap(arity, acc)

    def as_element(self):
        """View an arity-1 tensor as a free Poisson element."""
        if self.arity != 1:
            raise ValueError("only arity-1 tensors are plain elements")
        return FreePoissonElement._wrap({k[0]: c for k, c in self.terms.items()})

    def render(self, name=None, latex=False):
        if not self.terms:
            return "0"
        sep = " \\otimes " if latex else " ⊗ "
        parts = []
        for key in sorted(self.terms, key=lambda k: tuple(mono_key(m) for m in k), reverse=True):
            c = self.terms[key]
            body = sep.join(render_mono(m, name, latex) if m else "1" for m in key)
            coeff = "" if abs(c) == 1 else _fmt_coeff(abs(c), latex) + ("" if latex else "*")
            sign = "-" if c < 0 else "+"
            parts.append((f" {sign} " if parts else ("-" if c < 0 else "")) + coeff + body)
        return "".join(parts)

    def __repr__(self):
        return self.render()


# --------------------------------------------------------------------------
# extension of generator images to Poisson algebra homomorphisms

def evaluate(x: FreePoissonElement, image, one, word_cache=None):
    """Image of ``x`` under the Poisson homomorphism determined on generators.

    ``image(letter)`` gives the image of a generator and ``one`` the unit of
    the target; targets need ``+``, ``*`` (product and rational scaling) and
    ``.bracket``.  Lie words are evaluated through their standard bracketing.
    """
    cache = {} if word_cache is None else word_cache

    def ev(word):
        val = cache.get(word)
        if val is None:
            if len(word) == 1:
                val = image(word[0])
            else:
                u, v = standard_factorization(word)
                val = ev(u).bracket(ev(v))
            cache[word] = val
        return val

    total = None
    for m, c in x.terms.items():
        val = one
        for w in m:
            val = val * ev(w)
        val = val * c
        total = val if total is None else total + val
    return one * 0 if total is None else total
