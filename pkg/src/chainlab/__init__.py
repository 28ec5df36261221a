"""Exact k-chain counting, lower bounds and extremal families in the Boolean lattice."""

__version__ = "0.1.0"

from .bounds import BoundReport, bound_report, thm32_lower
from .chains import ChainCountReport, count_k_chains, lym_audit, owner_counts
from .exceptions import ContractError, DomainError, FamilyFormatError
from .extremal import canonical_family, check_extremal_2chain, conjectured_min, saturated_example
from .familyio import format_family, parse_family, read_family, write_family
from .lattice import ElementSet, HalfInteger, SetFamily
from .oracle import branch_and_bound_min, exhaustive_min, verify_conjecture, verify_iff_characterization
from .shifting import ShiftTrace, minimize, shift_step

__all__ = [
    "BoundReport", "ChainCountReport", "ContractError", "DomainError", "ElementSet",
    "FamilyFormatError", "HalfInteger", "SetFamily", "ShiftTrace", "bound_report",
    "branch_and_bound_min", "canonical_family", "check_extremal_2chain", "conjectured_min",
    "count_k_chains", "exhaustive_min", "format_family", "lym_audit", "minimize",
    "owner_counts", "parse_family", "read_family", "saturated_example", "shift_step",
    "thm32_lower", "verify_conjecture", "verify_iff_characterization", "write_family",
]
