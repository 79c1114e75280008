"""
Simulator Module

Short-time method-of-lines integration and the pointwise PDE residual.
"""
