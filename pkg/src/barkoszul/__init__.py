"""Bar/Koszul comparison maps, the cochain converter Upsilon and related checks for S(V)#G."""

from .scalars import CycScalar, quantum_integer, zeta_power
from .linalg import LinearMap
from .polynomial import Polynomial, SkewElement
from .groups import EigenData, GroupData, builtin_group, generate_group, load_group
from .resolutions import BarChain, KoszulChain, bar_differential, koszul_differential, phi
from .psi import PsiContext, psi, psi_standard
from .cochains import (
    BarCochain,
    TaggedForm,
    group_act_on_form,
    koszul_cochain_differential,
    phi_star,
    quantum_partial,
    reynolds,
    upsilon,
    upsilon_evaluate,
)

__all__ = [
    "CycScalar", "quantum_integer", "zeta_power", "LinearMap", "Polynomial", "SkewElement",
    "EigenData", "GroupData", "builtin_group", "generate_group", "load_group",
    "BarChain", "KoszulChain", "bar_differential", "koszul_differential", "phi",
    "PsiContext", "psi", "psi_standard",
    "BarCochain", "TaggedForm", "group_act_on_form", "koszul_cochain_differential",
    "phi_star", "quantum_partial", "reynolds", "upsilon", "upsilon_evaluate",
]
__version__ = "0.1.0"
