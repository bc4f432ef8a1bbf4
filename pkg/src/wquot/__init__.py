"""Quotients, residuals and universal automata of weighted formal power series."""
from .automata import (
    Dfa, Dwa, Wa, check_morphism, dwa_minimize, equivalent, fut, merge_states, past, to_dwa,
    rational_to_wa, to_wa, trans, trim_accessible, wa_determinize,
)
from .config import Bounds, DEFAULT_BOUNDS
from .errors import (
    BoundExceeded, ClassNotFound, MixedSemiring, NonCommutative, NotDominated, NotProper,
    NotSubFactorization, Unsupported, WquotError,
)
from .quotient import nerode_automaton, quotient_automaton_BA, series_quotient, word_quotient
from .residual import (
    extend_to_factorization, inclusion_degree, is_factorization, residual, residual_oracle,
)
from .semiring import BOOLEAN, INF, MAXMIN_NAT, NATURAL, TROPICAL_NAT, TableSemiring, chain, validate_axioms
from .series import Polynomial, StepFunction, combine, image, image_probe, to_step_function
from .universal import (
    build_A1, canonical_morphism, mergible, universal_automaton, value_lattice,
)
from .wcfg import Wcfg, normalize_proper, wcfg_eval, wcfg_left_quotient, wcfg_right_quotient

__version__ = "0.1.0"
