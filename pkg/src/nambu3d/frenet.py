"""The Frenet-frame system with unit curvature and torsion.

``x' = y, y' = z - x, z' = -y`` written over ``(x0, x1, x2)``, together
with its Nambu Hamiltonians, vector Hamiltonian and vector Lagrangian.
"""

from fractions import Fraction

from .forms import KForm, VecField
from .mechanics import NambuPair, vector_lagrangian_from_h
from .poly import Poly

x0, x1, x2 = Poly.variables()
third = Fraction(1, 3)

FIELD = VecField(x1, x2 - x0, -x1)

# x' = A x
MATRIX = (
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(-1), Fraction(0), Fraction(1)),
    (Fraction(0), Fraction(-1), Fraction(0)),
)

H1 = x0 + x2
H2 = x0 * x2 - x1**2 / 2
PAIR = NambuPair(H1, H2)

# y dy^dz + (z - x) dz^dx - y dx^dy
PSI = KForm(2, {(1, 2): x1, (2, 0): x2 - x0, (0, 1): -x1})

VECTOR_HAMILTONIAN = VecField(
    (x1**2 + x2**2 - x0 * x2) * third,
    -x1 * (x0 + x2) * third,
    (x1**2 + x0**2 - x0 * x2) * third,
)

LAGRANGIAN = vector_lagrangian_from_h(VECTOR_HAMILTONIAN)
