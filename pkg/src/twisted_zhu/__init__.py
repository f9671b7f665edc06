"""Exact twisted Zhu algebras, their bimodules and fusion-rule bounds for the rank-one free boson."""

from .fock import A, ID, OMEGA, THETA, TWISTED, VAC, VACUUM, FockModule
from .zhu import ZhuAlgebra
from .bimodule import Bimodule
from .intertwiner import module_as_intertwiner
from .fusion import fusion_sequence

__version__ = "0.1.0"
