"""pcgroups: exact computation in finite p-groups from weighted pc presentations.

Core layers: collection engine (`presentation`), materialized subgroup lattice
(`subgroups`), outer commutator words and value sets (`words`), auxiliary
stabilizer/obstruction subgroups (`stabilizers`), the structural lemma suite
(`lemmas`), single-slot witness search (`witness`), plus the pcgroup v1 file
format, builtin families, corpus runner and CLI.
"""

__version__ = "0.1.0"

from .families import builtin_corpus, builtin_family, direct_product
from .fileformat import PcgParseError, load_pcp_file, parse_pcp, serialize_pcp
from .lemmas import LEMMA_IDS, LemmaReport, lemma_suite
from .presentation import (ConsistencyReport, Element, PcPresentation,
                           PresentationError, collect, commutator, conjugate,
                           enumerate_elements, inverse, multiply, power,
                           validate_consistency)
from .stabilizers import (descending_centralizer_tower,
                          gamma_quotient_centralizer, left_obstruction,
                          right_obstruction)
from .subgroups import (CentralizerResult, Subgroup, all_subgroups, center,
                        centralizer_section, closure, commutator_subgroup,
                        frattini, full_group, gamma_term, is_powerful,
                        iterated_commutator, join, lower_central_series,
                        maximal_normalized_subgroups, nilpotency_class,
                        normal_closure, power_subgroup, rank,
                        trivial_subgroup, upper_central_series)
from .witness import (Branch, Hypotheses, LiftReport, TheoremVerdict,
                      check_single_slot_property, classify,
                      coset_lifting_step, find_witness)
from .words import (Comm, OuterWord, Var, WitnessTuple, arity, evaluate,
                    gamma_word, outer_word, parse_word, slot_value_set,
                    slot_value_set_restricted, value_set, verbal_subgroup,
                    word_text)

__all__ = [
    "__version__",
    # presentation
    "PcPresentation", "Element", "PresentationError", "ConsistencyReport",
    "collect", "multiply", "inverse", "power", "commutator", "conjugate",
    "validate_consistency", "enumerate_elements",
    # subgroups
    "Subgroup", "CentralizerResult", "trivial_subgroup", "full_group",
    "closure", "normal_closure", "join", "commutator_subgroup",
    "iterated_commutator", "lower_central_series", "gamma_term",
    "nilpotency_class", "power_subgroup", "frattini", "rank", "center",
    "upper_central_series", "centralizer_section", "is_powerful",
    "all_subgroups", "maximal_normalized_subgroups",
    # words
    "OuterWord", "Var", "Comm", "outer_word", "arity", "gamma_word",
    "parse_word", "word_text", "evaluate", "value_set", "verbal_subgroup",
    "WitnessTuple", "slot_value_set", "slot_value_set_restricted",
    # stabilizers
    "gamma_quotient_centralizer", "descending_centralizer_tower",
    "left_obstruction", "right_obstruction",
    # lemmas
    "LEMMA_IDS", "LemmaReport", "lemma_suite",
    # witness
    "Branch", "Hypotheses", "TheoremVerdict", "LiftReport", "classify",
    "find_witness", "check_single_slot_property", "coset_lifting_step",
    # families and io
    "builtin_family", "builtin_corpus", "direct_product",
    "parse_pcp", "serialize_pcp", "load_pcp_file", "PcgParseError",
]
