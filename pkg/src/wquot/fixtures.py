"""Named example inputs and random generators used by tests and scripts."""
from __future__ import annotations

from .automata import Dwa, Wa
from .semiring import BOOLEAN, INF, MAXMIN_NAT, TROPICAL_NAT, chain
from .series import Polynomial
from .wcfg import Wcfg


def contains_ab_dwa(S=MAXMIN_NAT, low=1, high=2):
    """Value ``high`` on words containing "ab", ``low`` elsewhere (3 states)."""
    return Dwa(S, "ab", [[1, 0], [1, 2], [2, 2]], 0, [low, low, high])


def contains_ab_tables():
    """Factorization tables stated for ``contains_ab_dwa`` over maxmin_nat:
    per factorization (X, Y, J, G) with X, Y given as (word predicate -> 2 else 1)."""
    two_if = lambda pred: (lambda w: 2 if pred("".join(w)) else 1)
    const = lambda c: (lambda w: c)
    return [
        (const(1), const(2), 1, 2),
        (const(2), const(1), 2, 1),
        (two_if(lambda s: "a" in s), two_if(lambda s: "ab" in s), 1, 1),
        (two_if(lambda s: "ab" in s), two_if(lambda s: "b" in s), 1, 1),
    ]


def contains_ab_weighted_states():
    """The four weighted states listed for ``contains_ab_dwa`` with their J and G."""
    return [((1, 1, 1), 1, 2), ((2, 2, 2), 2, 1), ((1, 2, 2), 1, 1), ((1, 1, 2), 1, 1)]


def shifted_length_wa():
    """Tropical WA over {a}: a^k ↦ k-1 for k > 0 (two states)."""
    S = TROPICAL_NAT
    return Wa(S, "a", 2, [(0, "a", 1, 0), (1, "a", 1, 1)], {0: 0}, {1: 0})


def tropical_pair():
    """Tropical base A (finite support) and divisor X = min(4+a, 2+b)."""
    S = TROPICAL_NAT
    A = Polynomial(S, "ab", {"ba": 0, "bb": 0, "aa": 10, "ab": 3})
    X = Polynomial(S, "ab", {"a": 4, "b": 2})
    return A, X


def balanced_grammar(S=BOOLEAN, weight=None):
    w = S.one if weight is None else weight
    return Wcfg(S, "ab", ["Z"], "Z", [("Z", "aZb", w), ("Z", "", S.one)])


# -- random generators --------------------------------------------------------------

def random_dwa(rng, S, n, alphabet="ab", values=None):
    values = list(values if values is not None else S.elements())
    delta = [[rng.randrange(n) for _ in alphabet] for _ in range(n)]
    return Dwa(S, alphabet, delta, 0, [rng.choice(values) for _ in range(n)])


def random_wa(rng, S, n, alphabet="ab", values=None, density=0.4):
    values = list(values if values is not None else S.elements())
    edges = [(p, s, q, rng.choice(values)) for p in range(n) for s in alphabet for q in range(n)
             if rng.random() < density]
    I = {q: rng.choice(values) for q in range(n) if rng.random() < 0.5}
    F = {q: rng.choice(values) for q in range(n) if rng.random() < 0.5}
    return Wa(S, alphabet, n, edges, I, F)


def random_poly(rng, S, alphabet="ab", max_len=2, size=2, values=None):
    values = [v for v in (values if values is not None else S.elements()) if v != S.zero]
    words = [()] + [tuple(w) for k in range(1, max_len + 1) for w in _words(alphabet, k)]
    terms = {rng.choice(words): rng.choice(values) for _ in range(size)}
    return Polynomial(S, alphabet, terms)


def _words(alphabet, k):
    import itertools
    return itertools.product(alphabet, repeat=k)


def random_grammar(rng, S, alphabet="ab", nts=("Z", "U"), nprods=4, max_rhs=3, values=None):
    values = [v for v in (values if values is not None else S.elements()) if v != S.zero]
    syms = list(alphabet) + list(nts)
    prods = []
    for _ in range(nprods):
        lhs = rng.choice(nts)
        rhs = [rng.choice(syms) for _ in range(rng.randint(0, max_rhs))]
        prods.append((lhs, rhs, rng.choice(values)))
    # guarantee some terminal-only production for every nonterminal
    for X in nts:
        prods.append((X, [rng.choice(alphabet)], rng.choice(values)))
    return Wcfg(S, alphabet, list(nts), nts[0], prods)


__all__ = [
    "contains_ab_dwa", "contains_ab_tables", "contains_ab_weighted_states", "shifted_length_wa",
    "tropical_pair", "balanced_grammar", "random_dwa", "random_wa", "random_poly",
    "random_grammar", "INF", "chain",
]
