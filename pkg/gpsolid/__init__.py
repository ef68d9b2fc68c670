"""
gpsolid: ground states of the nonlocal Gross-Pitaevskii functional at
positive density, and the fluid/solid transition they undergo.
"""

__version__ = "0.1.0"
