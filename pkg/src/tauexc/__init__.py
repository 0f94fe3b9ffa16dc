"""τ-tilting theory and τ-exceptional sequence mutation over monomial quiver algebras."""

from .algebra import Algebra, AlgebraError, parse_algebra
from .builtins import BUILTIN_NAMES, builtin, load_algebra
from .inventory import Inventory, InventoryError, InventoryTooSmall, build_inventory
from .modules import Module, ModuleMap, decompose, ext1_dim, hom_basis, hom_dim, tau, tau_inv
from .perpcat import e_inv, e_map, j_of
from .tauseq import (Mutability, MutationError, PairClassification, Regularity, UnknownAtBound,
                     classify, enumerate_complete, hasse_tex, mutate, phi_i, psi_i)
from .torsion import Context, ContextError, Obj, support_tau_tilting, sttilt_hasse, whole_context

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AlgebraError", "parse_algebra", "BUILTIN_NAMES", "builtin", "load_algebra",
    "Inventory", "InventoryError", "InventoryTooSmall", "build_inventory",
    "Module", "ModuleMap", "decompose", "ext1_dim", "hom_basis", "hom_dim", "tau", "tau_inv",
    "e_inv", "e_map", "j_of",
    "Mutability", "MutationError", "PairClassification", "Regularity", "UnknownAtBound",
    "classify", "enumerate_complete", "hasse_tex", "mutate", "phi_i", "psi_i",
    "Context", "ContextError", "Obj", "support_tau_tilting", "sttilt_hasse", "whole_context",
]
