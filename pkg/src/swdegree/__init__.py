"""Exact equivariant degrees of Seiberg-Witten maps on finite covers."""

from .exactnum import CycNum, LaurentPoly, cyc_root, parse_cycnum
from .groups import AbelianGroup, Embedding, TabledGroup, make_abelian_group, parse_character_table, parse_group_spec
from .reprings import J, SYMBOLIC, EquivElem, Pin2Elem, VirtualRep, parse_pin2
from .formulas import bryan_degree, furuta_degree, odd_sum_alpha0, z6_abc, z6_solve, zp_degree

__version__ = "0.1.0"
