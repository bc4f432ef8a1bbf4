"""Exact semiring instances with residuation.

Values are plain Python ints (booleans, naturals, chain levels, table ids)
plus the distinguished ``INF`` for the extended naturals.  Operations do
not re-validate carrier membership; values are checked when they enter an
automaton, series or document (see :meth:`Semiring.check`).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce

from .errors import MixedSemiring, Unsupported


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return "INF"


INF = _Infinity()


def _is_nat(x):
    return x is INF or (isinstance(x, int) and not isinstance(x, bool) and x >= 0)


class Semiring:
    kind = "abstract"
    zero = None
    one = None
    idempotent = False
    commutative = False
    finite = False

    @property
    def is_c_semiring(self):
        # 1 absorbing for plus is checked by validate_axioms; all shipped
        # idempotent kinds satisfy it.
        return self.idempotent and self.commutative

    def plus(self, a, b):
        raise NotImplementedError

    def times(self, a, b):
        raise NotImplementedError

    def contains(self, x):
        raise NotImplementedError

    def check(self, *values):
        for v in values:
            if not self.contains(v):
                raise MixedSemiring(f"{v!r} is not an element of {self}")
        return values[0] if len(values) == 1 else values

    def value(self, x):
        """Coerce a raw (e.g. decoded JSON) value into the carrier."""
        if isinstance(x, bool):
            x = int(x)
        return self.check(x)

    # -- order / lattice --------------------------------------------------
    def leq(self, a, b):
        return self.plus(a, b) == b

    def join(self, a, b):
        return self.plus(a, b)

    def meet(self, a, b):
        raise Unsupported(f"meet is not available for {self}")

    def residual(self, a, b):
        """``a -> b``: the largest x with ``a (x) x <= b``."""
        raise Unsupported(f"{self} is not a complete c-semiring")

    def residual_image(self, a):
        raise Unsupported(f"residual image cannot be enumerated for {self}")

    def require_c_semiring(self):
        if not self.is_c_semiring:
            raise Unsupported(f"{self} is not a complete c-semiring")

    # -- folds -------------------------------------------------------------
    def sum(self, values):
        return reduce(self.plus, values, self.zero)

    def product(self, values):
        return reduce(self.times, values, self.one)

    def meet_all(self, values):
        return reduce(self.meet, values, self.one)

    def star(self, a):
        if self.is_c_semiring:
            return self.one
        raise Unsupported(f"star of {a!r} diverges in {self}")

    # -- enumeration -------------------------------------------------------
    def elements(self):
        """All carrier elements; an infinite generator for infinite carriers."""
        raise NotImplementedError

    def sample_values(self, bound=32):
        if self.finite:
            return list(self.elements())
        return list(itertools.islice(self.elements(), bound + 2))

    def sort_key(self, a):
        """Key of a linear extension of the natural order (bottom first)."""
        return a

    # -- serialization -----------------------------------------------------
    def encode(self, v):
        return "inf" if v is INF else v

    def decode(self, j):
        if j == "inf" or j == "INF":
            return self.value(INF)
        return self.value(j)

    def to_json(self):
        return {"kind": self.kind}

    def __repr__(self):
        return self.kind


class _Boolean(Semiring):
    kind = "boolean"
    zero, one = 0, 1
    idempotent = commutative = finite = True

    def plus(self, a, b):
        return a | b

    def times(self, a, b):
        return a & b

    def leq(self, a, b):
        return a <= b

    def meet(self, a, b):
        return a & b

    def residual(self, a, b):
        return 1 if (not a or b) else 0

    def residual_image(self, a):
        return {self.residual(c, a) for c in (0, 1)}

    def contains(self, x):
        return x in (0, 1) and not isinstance(x, bool) or x is True or x is False

    def value(self, x):
        return self.check(int(x)) if isinstance(x, bool) else self.check(x)

    def elements(self):
        return iter((0, 1))


class _MaxMinNat(Semiring):
    """(N u {inf}, max, min, 0, inf)."""

    kind = "maxmin_nat"
    zero, one = 0, INF
    idempotent = commutative = True

    def plus(self, a, b):
        return a if a >= b else b

    def times(self, a, b):
        return a if a <= b else b

    def leq(self, a, b):
        return a <= b

    def meet(self, a, b):
        return self.times(a, b)

    def residual(self, a, b):
        return INF if a <= b else b

    def residual_image(self, a):
        return {a, INF}

    def contains(self, x):
        return _is_nat(x)

    def elements(self):
        return itertools.chain((0, INF), itertools.count(1))

    def sample_values(self, bound=32):
        return list(range(bound + 1)) + [INF]


class _TropicalNat(Semiring):
    """(N u {inf}, min, +, inf, 0); the natural order is reversed numeric."""

    kind = "tropical_nat"
    zero, one = INF, 0
    idempotent = commutative = True

    def plus(self, a, b):
        return a if a <= b else b

    def times(self, a, b):
        if a is INF or b is INF:
            return INF
        return a + b

    def leq(self, a, b):
        return b <= a

    def meet(self, a, b):
        return a if a >= b else b

    def residual(self, a, b):
        # sup{x | a + x >= b numerically}, sup taken in the reversed order
        if a is INF:
            return 0
        if b is INF:
            return INF
        return b - a if b > a else 0

    def residual_image(self, a):
        if a is INF:
            return {0, INF}
        return set(range(a + 1))

    def contains(self, x):
        return _is_nat(x)

    def elements(self):
        return itertools.chain((INF, 0), itertools.count(1))

    def sample_values(self, bound=32):
        return list(range(bound + 1)) + [INF]

    def sort_key(self, a):
        return (0, 0) if a is INF else (1, -a)


@dataclass(frozen=True, repr=False)
class Chain(Semiring):
    """Levels 0..n under (max, min); 0 is zero, n is one."""

    levels: int = 1
    kind = "chain"
    idempotent = commutative = finite = True

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("a chain needs at least two levels")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return self.levels

    def plus(self, a, b):
        return a if a >= b else b

    def times(self, a, b):
        return a if a <= b else b

    def leq(self, a, b):
        return a <= b

    def meet(self, a, b):
        return a if a <= b else b

    def residual(self, a, b):
        return self.levels if a <= b else b

    def residual_image(self, a):
        return {self.residual(c, a) for c in range(self.levels + 1)}

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x <= self.levels

    def elements(self):
        return iter(range(self.levels + 1))

    def to_json(self):
        return {"kind": "chain", "levels": self.levels}

    def __repr__(self):
        return f"chain({self.levels})"


def chain(n):
    return Chain(n)


class _Natural(Semiring):
    """(N, +, *, 0, 1); evaluation only, no residuation."""

    kind = "natural"
    zero, one = 0, 1
    commutative = True

    def plus(self, a, b):
        return a + b

    def times(self, a, b):
        return a * b

    def leq(self, a, b):
        return a <= b

    def star(self, a):
        if a == 0:
            return 1
        raise Unsupported(f"star of {a} diverges over the naturals")

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def elements(self):
        return itertools.count(0)


@dataclass(frozen=True, repr=False, eq=True)
class TableSemiring(Semiring):
    """User-defined finite semiring given by operation tables over ids 0..k-1."""

    carrier: tuple
    plus_table: tuple
    times_table: tuple
    zero_id: int
    one_id: int
    _order: tuple = field(default=(), compare=False, hash=False)
    kind = "table"
    finite = True

    def __post_init__(self):
        k = len(self.carrier)
        for name, t in (("plus", self.plus_table), ("times", self.times_table)):
            if len(t) != k or any(len(row) != k for row in t):
                raise ValueError(f"{name} table must be {k}x{k}")
            if any(not (isinstance(v, int) and 0 <= v < k) for row in t for v in row):
                raise ValueError(f"{name} table references unknown elements")
        if not (0 <= self.zero_id < k and 0 <= self.one_id < k):
            raise ValueError("zero/one must reference carrier elements")
        below = [sum(1 for y in range(k) if self.leq(y, x)) for x in range(k)]
        object.__setattr__(self, "_order", tuple(below))

    @classmethod
    def from_tables(cls, carrier, plus, times, zero, one):
        return cls(tuple(carrier), tuple(map(tuple, plus)), tuple(map(tuple, times)), zero, one)

    @property
    def zero(self):
        return self.zero_id

    @property
    def one(self):
        return self.one_id

    @property
    def idempotent(self):
        return all(self.plus_table[a][a] == a for a in range(len(self.carrier)))

    @property
    def commutative(self):
        k = len(self.carrier)
        return all(self.times_table[a][b] == self.times_table[b][a] for a in range(k) for b in range(k))

    def plus(self, a, b):
        return self.plus_table[a][b]

    def times(self, a, b):
        return self.times_table[a][b]

    def meet(self, a, b):
        self.require_c_semiring()
        lower = [x for x in range(len(self.carrier)) if self.leq(x, a) and self.leq(x, b)]
        return self.sum(lower)

    def residual(self, a, b):
        self.require_c_semiring()
        return self.sum(x for x in range(len(self.carrier)) if self.leq(self.times(a, x), b))

    def residual_image(self, a):
        return {self.residual(c, a) for c in range(len(self.carrier))}

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < len(self.carrier)

    def elements(self):
        return iter(range(len(self.carrier)))

    def sort_key(self, a):
        return (self._order[a], a)

    def to_json(self):
        return {
            "kind": "table",
            "carrier": list(self.carrier),
            "plus": [list(r) for r in self.plus_table],
            "times": [list(r) for r in self.times_table],
            "zero": self.zero_id,
            "one": self.one_id,
        }

    def __repr__(self):
        return f"table({len(self.carrier)})"


BOOLEAN = _Boolean()
MAXMIN_NAT = _MaxMinNat()
TROPICAL_NAT = _TropicalNat()
NATURAL = _Natural()

_SINGLETONS = {s.kind: s for s in (BOOLEAN, MAXMIN_NAT, TROPICAL_NAT, NATURAL)}


def from_json(d):
    kind = d.get("kind")
    if kind in _SINGLETONS:
        return _SINGLETONS[kind]
    if kind == "chain":
        return Chain(int(d["levels"]))
    if kind == "table":
        return TableSemiring.from_tables(d["carrier"], d["plus"], d["times"], d["zero"], d["one"])
    raise ValueError(f"unknown semiring kind {kind!r}")


# -- axiom validation --------------------------------------------------------

@dataclass
class LawCheck:
    law: str
    passed: bool
    witness: tuple | None = None


@dataclass
class AxiomReport:
    semiring: Semiring
    exhaustive: bool
    checks: list

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        lines = [f"{self.semiring} ({'exhaustive' if self.exhaustive else 'sampled'})"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  {mark} {c.law}" + ("" if c.passed else f"  witness={c.witness}"))
        return "\n".join(lines)


def _laws(S):
    p, t, z, o = S.plus, S.times, S.zero, S.one
    yield "plus associative", 3, lambda a, b, c: p(p(a, b), c) == p(a, p(b, c))
    yield "plus commutative", 2, lambda a, b: p(a, b) == p(b, a)
    yield "zero is plus identity", 1, lambda a: p(a, z) == a and p(z, a) == a
    yield "times associative", 3, lambda a, b, c: t(t(a, b), c) == t(a, t(b, c))
    yield "one is times identity", 1, lambda a: t(a, o) == a and t(o, a) == a
    yield "zero annihilates", 1, lambda a: t(a, z) == z and t(z, a) == z
    yield "left distributive", 3, lambda a, b, c: t(a, p(b, c)) == p(t(a, b), t(a, c))
    yield "right distributive", 3, lambda a, b, c: t(p(b, c), a) == p(t(b, a), t(c, a))
    yield "plus idempotent", 1, lambda a: p(a, a) == a
    yield "times commutative", 2, lambda a, b: t(a, b) == t(b, a)
    yield "one absorbs plus", 1, lambda a: p(a, o) == o
    leq = S.leq
    yield "order reflexive", 1, lambda a: leq(a, a)
    yield "order antisymmetric", 2, lambda a, b: not (leq(a, b) and leq(b, a)) or a == b
    yield "order transitive", 3, lambda a, b, c: not (leq(a, b) and leq(b, c)) or leq(a, c)
    yield "zero is bottom", 1, lambda a: leq(z, a)


def validate_axioms(S, bound=32, samples=4000, seed=0):
    """Check semiring and c-semiring laws; failures are reported, never raised.

    Finite carriers are checked exhaustively.  Infinite ones are checked on
    random tuples drawn from {0..bound, inf}.
    """
    values = S.sample_values(bound)
    exhaustive = S.finite
    rng = random.Random(seed)
    checks = []
    laws = list(_laws(S))
    if S.idempotent and S.commutative:
        laws.append(("one is top", 1, lambda a: S.leq(a, S.one)))
        laws.append((
            "residual adjunction", 3,
            lambda a, b, x: S.leq(x, S.residual(a, b)) == S.leq(S.times(a, x), b),
        ))
    for name, arity, law in laws:
        if exhaustive:
            tuples = itertools.product(values, repeat=arity)
        else:
            pinned = [S.zero, S.one]
            tuples = itertools.chain(
                itertools.product(pinned, repeat=arity),
                (tuple(rng.choice(values) for _ in range(arity)) for _ in range(samples)),
            )
        witness = None
        for tup in tuples:
            try:
                good = law(*tup)
            except Unsupported:
                good = False
            if not good:
                witness = tup
                break
        checks.append(LawCheck(name, witness is None, witness))
    return AxiomReport(S, exhaustive, checks)
