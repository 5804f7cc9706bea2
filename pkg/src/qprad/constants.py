"""Physical constants and unit conversions shared by all modules.

Unit conventions used throughout the package:

* time in seconds, rates in 1/s, angular frequencies in rad/s
* energies in eV (superconducting gap values are often quoted in ueV;
  convert at the boundary)
* absorbed radiation power density in keV / s / mm^3
* source activities in Bq (configs may quote uCi)
* the power-to-rate coefficient ``a`` carries sqrt(mm^3 / keV), so that
  ``a * sqrt(omega * P)`` is a rate in 1/s
"""

# Reduced Planck constant, eV * s
HBAR_EV_S = 6.582119569e-16

# Boltzmann constant, eV / K
KB_EV_PER_K = 8.617333262e-5

# Activity conversion
BQ_PER_UCI = 3.7e4

# Thin-film aluminum defaults
ALUMINUM_GAP_EV = 180e-6
ALUMINUM_COOPER_PAIR_DENSITY_PER_UM3 = 4e6

SECONDS_PER_HOUR = 3600.0
