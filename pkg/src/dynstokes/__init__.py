"""
dynstokes - Fourier-multiplier solver for the half-space Stokes resolvent
problem with dynamic boundary conditions, with an independent ODE oracle,
residual verifiers and a multiplier certification harness
"""

__version__ = "0.1.0"
