"""Crossed modules of groups over a fixed base: commutators, centrality,
non-abelian tensor products and universal central extensions, computed
exactly on finite permutation groups."""
from .errors import XModLabError
from .perm import Perm, PermGroup, Subgroup, GroupHom, commutator, ternary_commutator
from .actions import Action, coinvariants, displacement, semidirect
from .xmod import XModL, ExtensionL, ab_reflect, is_central, is_perfect
from .tensor import tensor, uce
from .catalog import Catalog, load_catalog
from .suites import run_suite

__all__ = [
    "XModLabError", "Perm", "PermGroup", "Subgroup", "GroupHom", "commutator",
    "ternary_commutator", "Action", "coinvariants", "displacement", "semidirect", "XModL",
    "ExtensionL", "ab_reflect", "is_central", "is_perfect", "tensor", "uce", "Catalog",
    "load_catalog", "run_suite",
]
