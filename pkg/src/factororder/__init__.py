"""Generalized factor order on words: automata, rational generating
functions, Wilf equivalence and the Möbius function of factor order."""

from .core import (FinitePoset, IotaMap, Weight, composition, embedding_indices,
                   format_word, k_factorize, parse_word, weight)
from .polyrat import Poly2, RatFun2, SeriesTable, parse_expr, render, series_expand
from .automaton import Pattern, build_nfa, build_pattern_nfa, build_suffix_nfa, simulate
from .transfer import gen_function, transfer_matrix
from .wilf import classify, wilf_equivalent
from .strongwilf import census, strong_refute
from .moebius import mobius, mobius_oracle

__version__ = "0.1.0"
