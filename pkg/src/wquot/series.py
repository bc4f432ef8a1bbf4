"""Formal power series: polynomials, step functions, automata and lazy composites.

Words are tuples of symbols.  Plain strings are accepted wherever a word is
expected and are split into single-character symbols.
"""
from __future__ import annotations

import itertools

from .errors import BoundExceeded, MixedSemiring, Unsupported


def as_word(w):
    if isinstance(w, tuple):
        return w
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def word_str(w):
    return "".join(w) if all(len(s) == 1 for s in w) else " ".join(w)


def words_upto(alphabet, n):
    """All words of length <= n, shortest first."""
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


def words_of_length(alphabet, n):
    return itertools.product(alphabet, repeat=n)


class Series:
    """A map from words over ``alphabet`` to ``semiring`` values."""

    def __init__(self, semiring, alphabet):
        self.semiring = semiring
        self.alphabet = tuple(alphabet)
        self._symbols = frozenset(self.alphabet)

    def check_word(self, w):
        w = as_word(w)
        for s in w:
            if s not in self._symbols:
                raise ValueError(f"symbol {s!r} is not in the alphabet {list(self.alphabet)}")
        return w

    def __call__(self, w):
        return self.eval(self.check_word(w))

    def eval(self, w):
        raise NotImplementedError

    def table(self, n):
        return {w: self.eval(w) for w in words_upto(self.alphabet, n)}

    def compatible(self, other):
        if self.semiring != other.semiring:
            raise MixedSemiring(f"series over {self.semiring} and {other.semiring} cannot be combined")
        if set(self.alphabet) != set(other.alphabet):
            raise MixedSemiring("series over different alphabets cannot be combined")

    # operator sugar
    def __add__(self, other):
        return combine("sum", self, other)

    def __mul__(self, other):
        return combine("cauchy", self, other)


class Polynomial(Series):
    """Finite-support series; zero coefficients are dropped."""

    def __init__(self, semiring, alphabet, terms=()):
        super().__init__(semiring, alphabet)
        items = terms.items() if isinstance(terms, dict) else terms
        acc = {}
        for w, v in items:
            w = self.check_word(w)
            semiring.check(v)
            acc[w] = semiring.plus(acc.get(w, semiring.zero), v)
        self.terms = {w: v for w, v in acc.items() if v != semiring.zero}

    def eval(self, w):
        return self.terms.get(w, self.semiring.zero)

    def support(self):
        return set(self.terms)

    def max_length(self):
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        inner = ", ".join(f"{word_str(w) or 'ε'}:{v!r}" for w, v in sorted(self.terms.items()))
        return f"Polynomial({inner})"


def constant(semiring, alphabet, value):
    """The series mapping every word to ``value``."""
    from .automata import Dwa
    return Dwa(semiring, alphabet, [[0] * len(alphabet)], 0, [value])


class StepFunction(Series):
    """Sum of r_i * L_i for pairwise disjoint unweighted languages L_i."""

    def __init__(self, semiring, alphabet, parts):
        super().__init__(semiring, alphabet)
        self.parts = []
        for r, dfa in parts:
            semiring.check(r)
            if r == semiring.zero:
                raise ValueError("step function values must be nonzero")
            self.parts.append((r, dfa))

    def eval(self, w):
        for r, dfa in self.parts:
            if dfa.accepts(w):
                return r
        return self.semiring.zero


class Lazy(Series):
    """A composite evaluated pointwise on demand."""

    def __init__(self, semiring, alphabet, op, args, fn):
        super().__init__(semiring, alphabet)
        self.op, self.args, self._fn = op, args, fn

    def eval(self, w):
        return self._fn(w)

    def __repr__(self):
        return f"Lazy({self.op})"


def proper_split(A):
    """Return ``(A(ε), P)`` with P the proper part (zero on ε)."""
    S = A.semiring
    c = A.eval(())
    if isinstance(A, Polynomial):
        return c, Polynomial(S, A.alphabet, {w: v for w, v in A.terms.items() if w})
    return c, Lazy(S, A.alphabet, "proper", (A,), lambda w: A.eval(w) if w else S.zero)


def _star_value(A, w):
    S = A.semiring
    cs = S.star(A.eval(()))
    s = [cs]
    for j in range(1, len(w) + 1):
        acc = S.zero
        for i in range(j):
            if s[i] != S.zero:
                acc = S.plus(acc, S.times(s[i], A.eval(w[i:j])))
        s.append(S.times(acc, cs))
    return s[-1]


def combine(op, *args, bound=None):
    """Rational operations on series.

    ``sum``/``cauchy`` take two series; ``scalar_left`` takes (r, A);
    ``scalar_right`` takes (A, r); ``reversal``/``star`` take one series.
    """
    if op in ("sum", "cauchy"):
        A, B = args
        A.compatible(B)
        S, alph = A.semiring, A.alphabet
        if isinstance(A, Polynomial) and isinstance(B, Polynomial):
            if op == "sum":
                return Polynomial(S, alph, list(A.terms.items()) + list(B.terms.items()))
            return Polynomial(S, alph, [(u + v, S.times(x, y))
                                        for u, x in A.terms.items() for v, y in B.terms.items()])
        if op == "sum":
            return Lazy(S, alph, op, args, lambda w: S.plus(A.eval(w), B.eval(w)))

        def cauchy(w):
            return S.sum(S.times(A.eval(w[:i]), B.eval(w[i:])) for i in range(len(w) + 1))
        return Lazy(S, alph, op, args, cauchy)
    if op == "scalar_left" or op == "scalar_right":
        r, A = (args[0], args[1]) if op == "scalar_left" else (args[1], args[0])
        S = A.semiring
        S.check(r)
        mul = (lambda x: S.times(r, x)) if op == "scalar_left" else (lambda x: S.times(x, r))
        if isinstance(A, Polynomial):
            return Polynomial(S, A.alphabet, {w: mul(v) for w, v in A.terms.items()})
        return Lazy(S, A.alphabet, op, args, lambda w: mul(A.eval(w)))
    if op == "reversal":
        (A,) = args
        if isinstance(A, Polynomial):
            return Polynomial(A.semiring, A.alphabet, {w[::-1]: v for w, v in A.terms.items()})
        from .automata import Dwa, Wa, reverse_wa, to_wa
        if isinstance(A, (Dwa, Wa)):
            return reverse_wa(to_wa(A))
        return Lazy(A.semiring, A.alphabet, op, args, lambda w: A.eval(w[::-1]))
    if op == "star":
        (A,) = args
        S = A.semiring
        if isinstance(A, Polynomial):
            if bound is None:
                raise ValueError("star of a polynomial needs a length bound")
            return Polynomial(S, A.alphabet,
                              [(w, _star_value(A, w)) for w in words_upto(A.alphabet, bound)])
        S.star(A.eval(()))  # fail early on divergence
        return Lazy(S, A.alphabet, op, args, lambda w: _star_value(A, w))
    raise ValueError(f"unknown operation {op!r}")


def image(A, state_bound=None):
    """Exact set of values taken by A."""
    from .automata import Dwa, Wa, trim_accessible, wa_determinize, step_to_dwa
    S = A.semiring
    if isinstance(A, Dwa):
        B = trim_accessible(A)
        return set(B.final)
    if isinstance(A, StepFunction):
        return image(step_to_dwa(A))
    if isinstance(A, Polynomial):
        vals = set(A.terms.values())
        if A.alphabet or () not in A.terms:
            vals.add(S.zero)
        return vals
    if isinstance(A, Wa):
        return image(wa_determinize(A, state_bound or 1000))
    raise Unsupported("image of a lazy composite cannot be computed exactly")


def image_probe(A, maxlen):
    """Values taken on words of length <= maxlen (a lower bound on the image)."""
    return {A.eval(w) for w in words_upto(A.alphabet, maxlen)}


def to_step_function(A):
    """Split a Dwa into (value, language) parts, one per nonzero final value."""
    from .automata import Dfa, trim_accessible
    B = trim_accessible(A)
    S = B.semiring
    values = sorted({v for v in B.final if v != S.zero}, key=S.sort_key)
    parts = []
    for r in values:
        acc = frozenset(q for q in range(B.n) if B.final[q] == r)
        parts.append((r, Dfa(B.alphabet, B.delta, B.initial, acc)))
    return StepFunction(S, B.alphabet, parts)


__all__ = [
    "Series", "Polynomial", "StepFunction", "Lazy", "combine", "image", "image_probe",
    "to_step_function", "proper_split", "constant", "as_word", "words_upto", "word_str",
    "BoundExceeded",
]
