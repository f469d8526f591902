"""
Decision-diagram engine and the symbolic encoding of activity diagrams.
"""

from .encoding import (
    ExprCompiler,
    FiniteVar,
    JointEncoding,
    SideLayout,
    SymbolicDiagram,
    check_shared_inputs,
    compile_guards,
    joint_order,
    single_encoding,
)
from .manager import DdManager, FunctionalStep, SymbolicSet, TransitionRelation

__all__ = [
    "DdManager",
    "ExprCompiler",
    "FiniteVar",
    "FunctionalStep",
    "JointEncoding",
    "SideLayout",
    "SymbolicDiagram",
    "SymbolicSet",
    "TransitionRelation",
    "check_shared_inputs",
    "compile_guards",
    "joint_order",
    "single_encoding",
]
