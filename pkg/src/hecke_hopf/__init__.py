"""Exact computations with Hecke-Hopf algebras of finite Coxeter groups."""

from .coxeter import CoxeterSystem, dihedral, named_system
from .heckehopf import HHAlgebra, HHElement
from .report import VerificationReport

__all__ = ["CoxeterSystem", "HHAlgebra", "HHElement", "VerificationReport", "dihedral", "named_system"]
__version__ = "0.1.0"
