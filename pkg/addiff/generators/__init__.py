"""
Diagram generators: benchmark families, mutations and random pairs.
"""

from .families import gen_forking, gen_linear
from .mutations import MutationSpec, forking_mutant, linear_mutant, mutate
from .random_ads import random_declarations, random_diagram, random_pair

__all__ = [
    "MutationSpec",
    "forking_mutant",
    "gen_forking",
    "gen_linear",
    "linear_mutant",
    "mutate",
    "random_declarations",
    "random_diagram",
    "random_pair",
]
