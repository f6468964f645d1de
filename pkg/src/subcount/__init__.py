"""Exact expansion and verification of subgraph-counting identities in graph neighborhoods."""

from .counting import identity_lhs_eval, j_count, s_count, term_eval
from .graphs import (
    ColoredGraph,
    SmallGraph,
    canonical_form,
    emit_graph6,
    enumerate_graphs,
    make_graph,
    neighborhood,
    parse_graph6,
)
from .names import named
from .polynom import RationalPoly
from .symbolic import JExpr, KExpr, apex_close, expand_minus, expand_plus, expand_term, j_mul, k_mul
from .terms import TermSpec, parse_term

__version__ = "0.1.0"
