# app/machine/__init__.py
"""
Machine Package

A concrete acceptable programming system: a register machine with a total
Gödel numbering, a step-bounded interpreter with oracle access, and the
s-m-n, padding and fixed-point transforms on indices.
"""
