# app/oracles/__init__.py
"""
Oracles and Functionals Package

Oracles are callables position -> bit. The package holds finite and decidable
oracles, stage approximations of sets, bT-reduction witnesses and their
verification, truth-table conditions, and the stage approximations of ∅′.
"""
