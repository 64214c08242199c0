"""Divergence-free dynamics on 3-space: Nambu brackets, vector Hamiltonians
and vector Lagrangians with exact polynomial arithmetic."""

from .forms import (
    BiVec,
    KForm,
    VecField,
    dS,
    div,
    exterior_derivative,
    grad,
    homotopy_potential,
    interior_product,
    lie_derivative,
    rot,
    volume_form,
    wedge,
)
from .mechanics import (
    HALF,
    UNIT,
    BracketConvention,
    NambuPair,
    VectorLagrangian,
    nambu_bracket,
    nambu_flow_field,
    vector_bracket,
    vh_flow_field,
)
from .poly import EXTENDED, POSITION, Poly, parse_poly

__version__ = "0.1.0"
