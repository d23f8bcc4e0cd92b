"""Physical constants shared across the package.

Unit conventions at public interfaces: lengths in millimetres, flux density in
millitesla, spatial field derivatives in tesla per metre (numerically equal to
mT/mm), magnetic moments in A m^2, angles in degrees, forces in millinewtons.
Internal helpers convert to SI where it keeps formulas recognisable.
"""

import numpy as np

MU0 = 4.0e-7 * np.pi
"""Vacuum permeability, T m / A."""

GRAVITY = 9.81
"""Standard gravitational acceleration, m / s^2."""
