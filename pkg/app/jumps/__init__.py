# app/jumps/__init__.py
"""
Bounded Jump Package

Stage-bounded enumerators for A^b and its variants, iterated jumps of ∅,
the truth-table jumps, and the explicit reductions between them.
"""
