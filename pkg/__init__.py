"""
LPD Step Toolkit

Inverse scattering and long-time asymptotics for the focusing nonlocal
Lakshmanan-Porsezian-Daniel equation with step-like initial data, with a
short-time simulator for cross-checks.

Project Structure:
- modules/: Numerical kernels, errors, logging and CSV packing
- scattering/: Profiles, Jost solutions and scattering data
- steepest_descent/: Phase geometry, delta, jumps, residues and the
  parabolic-cylinder local model
- asymptotics/: Leading-order asymptotics and the exact soliton
- simulator/: Symmetric grids, PDE residual and time evolution
- cli/: Configuration, subcommands and the validation suite
- docs/: Project documentation and guides

Main Entry Point:
- run_toolkit.py: Start the command line toolkit
"""
