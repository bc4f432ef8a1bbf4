"""Regenerate the JSON documents in data/ from the named fixtures."""
import json
from pathlib import Path

from wquot.automata import Wa
from wquot.fixtures import balanced_grammar, contains_ab_dwa, shifted_length_wa, tropical_pair
from wquot.io import to_document
from wquot.semiring import BOOLEAN, chain

OUT = Path(__file__).resolve().parent.parent / "data"


def main():
    base, div = tropical_pair()
    docs = {
        "contains_ab": (contains_ab_dwa(), "2 on words containing ab, 1 elsewhere"),
        "contains_ab_chain2": (contains_ab_dwa(chain(2)), "same automaton over the 3-level chain"),
        "shifted_length": (shifted_length_wa(), "a^k -> k-1 for k>0 (tropical)"),
        "tropical_base": (base, "finite tropical series on two-letter words"),
        "tropical_divisor": (div, "min(4+a, 2+b)"),
        "balanced": (balanced_grammar(), "balanced a/b words"),
        "single_b": (Wa(BOOLEAN, "ab", 2, [(0, "b", 1, 1)], {0: 1}, {1: 1}), "the one-word series b"),
    }
    OUT.mkdir(exist_ok=True)
    for name, (X, text) in docs.items():
        (OUT / f"{name}.json").write_text(json.dumps(to_document(X, {"description": text}), indent=1) + "\n")
        print(f"wrote data/{name}.json")


if __name__ == "__main__":
    main()
