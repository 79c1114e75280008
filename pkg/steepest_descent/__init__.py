"""
Nonlinear Steepest Descent

Phase geometry, the delta function, the jump matrices of each deformation
stage, residue constants with the Blaschke-Potapov elements, and the
parabolic-cylinder local model at the saddles.
"""
