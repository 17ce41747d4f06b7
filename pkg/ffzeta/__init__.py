"""Exact arithmetic for power sums and zeta objects over F_q[theta]."""
__version__ = "0.1.0"
