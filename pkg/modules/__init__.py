"""
Shared Modules and Utilities

This package contains the numerical kernels and ambient pieces used by every
other package.

Main Components:
- quadrature.py: Adaptive, principal value and Cauchy-transform integrals
- special_functions.py: Complex Gamma and parabolic cylinder functions
- roots.py: Real roots of depressed cubics with a Cardano cross-check
- ode.py: Complex-valued ODE integration on top of solve_ivp
- errors.py: The LPDError hierarchy
- log.py: Logging setup for the CLI
- packing.py: CSV tables with a JSON metadata line
"""
