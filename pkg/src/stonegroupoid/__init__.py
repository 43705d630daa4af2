"""Finite groupoids, towers of them, and their realization as 1-types."""

from .errors import DomainError
from .finite_groupoid import FiniteGroupoid, GroupoidFunctor, validate_groupoid
from .groups import FiniteGroup
from .tower import GroupoidTower, SetTower, validate_tower

__all__ = ["DomainError", "FiniteGroup", "FiniteGroupoid", "GroupoidFunctor", "GroupoidTower",
           "SetTower", "validate_groupoid", "validate_tower"]
__version__ = "0.1.0"
