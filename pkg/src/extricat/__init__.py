"""Extriangulated categories from quiver representations over GF(p).

Two backends share one interface: module categories of representation-finite
path algebras (:class:`ModuleCategory`) and shift windows of the bounded
derived category of a hereditary path algebra (:class:`DerivedCategory`).
"""

from .catalog import Catalog, build_catalog
from .category import CapExceeded, Conflation, ExtriCat, Subcat, WindowError
from .config import SessionConfig, fixture_path
from .derived import DerivedCategory
from .modcat import ModuleCategory
from .objects import ZERO, ObjClass
from .reps import Quiver, Rep, RepMap

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Catalog",
    "Conflation",
    "DerivedCategory",
    "ExtriCat",
    "ModuleCategory",
    "ObjClass",
    "Quiver",
    "Rep",
    "RepMap",
    "SessionConfig",
    "Subcat",
    "WindowError",
    "ZERO",
    "build_catalog",
    "fixture_path",
]
