"""Stabilized automorphism groups of full shifts, computed on periodic points."""

from .codes import BlockCode, Element, ShiftPower, SimpleAuto, apply, compose, equals, inverse, reflect, tabulate
from .errors import CapacityError, StabautError
from .perms import centralizer_in_sym, dimension_rep, is_inert, nu, rho, root_analysis
from .psi import Composite, Inner, Profinite, ProfiniteInteger, Reflection, admissible_levels, defect_scan, degree
from .subshifts import Subshift, fix, galois_check, is_chain_recurrent, markov_approximation, stp, verraum_subshift
from .symbolic import PeriodicPoint, enumerate_periodic, point_distance
from .twotrack import gamma, make_g, trackswap
from .verraum import global_verraum, local_verraum, profinite_recovery

__version__ = "0.1.0"

__all__ = [
    "BlockCode", "Element", "ShiftPower", "SimpleAuto", "apply", "compose", "equals", "inverse", "reflect",
    "tabulate", "CapacityError", "StabautError", "centralizer_in_sym", "dimension_rep", "is_inert", "nu",
    "rho", "root_analysis", "Composite", "Inner", "Profinite", "ProfiniteInteger", "Reflection",
    "admissible_levels", "defect_scan", "degree", "Subshift", "fix", "galois_check", "is_chain_recurrent",
    "markov_approximation", "stp", "verraum_subshift", "PeriodicPoint", "enumerate_periodic",
    "point_distance", "gamma", "make_g", "trackswap", "global_verraum", "local_verraum",
    "profinite_recovery", "__version__",
]
