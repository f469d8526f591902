"""
Operational semantics: explicit successor computation, traces and SMV export.
"""

from .routing import Route, resting_edges, routes_from, routing_table
from .smv import emit_smv
from .stepper import StateSpace, initial_states, stabilize, successors
from .traces import enumerate_traces, is_accepting, reachable_states

__all__ = [
    "Route",
    "StateSpace",
    "emit_smv",
    "enumerate_traces",
    "initial_states",
    "is_accepting",
    "reachable_states",
    "resting_edges",
    "routes_from",
    "routing_table",
    "stabilize",
    "successors",
]
