"""Print the worked examples: factorizations, tropical quotients, blow-up, grammar quotients.

    python3 scripts/reproduce_examples.py [--window K]
"""
import argparse
from dataclasses import dataclass

from wquot import (
    DEFAULT_BOUNDS, BoundExceeded, chain, image_probe, quotient_automaton_BA, residual,
    series_quotient, universal_automaton, wa_determinize, wcfg_eval, wcfg_left_quotient,
    wcfg_right_quotient,
)
from wquot.automata import Dwa, trim_accessible
from wquot.fixtures import balanced_grammar, contains_ab_dwa, shifted_length_wa, tropical_pair
from wquot.io import value_table
from wquot.semiring import BOOLEAN
from wquot.series import words_upto


@dataclass
class Config:
    window: int = 3
    blowup_bound: int = 50
    probe_length: int = 10


def show_universal(A, label, k):
    U = universal_automaton(A)
    enc = A.semiring.encode
    print(f"\n== universal automaton, {label}: {U.n} classes")
    for i, c in enumerate(U.classes):
        print(f"  u{i + 1}: h={[enc(v) for v in c.h]} J={enc(c.J)} G={enc(c.G)}")
        print(f"      X={value_table(c.X, k)}")
        print(f"      Y={value_table(c.Y, k)}")
    failed = [k for k, v in U.audit.items() if k != "window" and not v]
    print(f"  audits: {'all pass' if not failed else failed}")


def main(cfg: Config):
    show_universal(contains_ab_dwa(), "maxmin_nat", cfg.window)
    show_universal(contains_ab_dwa(chain(2)), "chain(2)", cfg.window)

    A, X = tropical_pair()
    Q, R = series_quotient(A, X), residual(A, X)
    print("\n== tropical divisor")
    print(f"  quotient a,b: {Q(('a',))}, {Q(('b',))}   residual a,b: {R(('a',))}, {R(('b',))}")

    B = shifted_length_wa()
    try:
        wa_determinize(B, cfg.blowup_bound)
        print("\n== shifted length: determinized (unexpected)")
    except BoundExceeded as e:
        print(f"\n== shifted length: {e}")
    print(f"  distinct values on words <= {cfg.probe_length}: {len(image_probe(B, cfg.probe_length))}")

    L = Dwa(BOOLEAN, "ab", [[1, 0], [1, 2], [1, 0]], 0, [0, 0, 1])
    BA = quotient_automaton_BA(L, DEFAULT_BOUNDS.state_bound)
    print(f"\n== quotient automaton of Σ*ab: {BA.n} states, {trim_accessible(BA).n} accessible")

    G = balanced_grammar()
    only = lambda s: Dwa(BOOLEAN, "ab", [[2, 1], [2, 2], [2, 2]] if s == "b" else [[1, 2], [2, 2], [2, 2]], 0, [0, 1, 0])
    right, left = wcfg_right_quotient(G, only("b")), wcfg_left_quotient(G, only("a"))
    pick = lambda H: sorted("".join(w) for w in words_upto("ab", 5) if wcfg_eval(H, w))
    print(f"\n== a^n b^n quotients (words <= 5): right by b {pick(right)}, left by a {pick(left)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--window", type=int, default=Config.window)
    main(Config(window=ap.parse_args().window))
