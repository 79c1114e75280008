"""
Scattering Module

Initial profiles, Jost solutions of the x-part of the Lax pair, and the
scattering data a1, a2, b with the zero i*xi1 of a1.
"""
