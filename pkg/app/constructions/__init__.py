# app/constructions/__init__.py
"""
Constructions Package

Stage-by-stage simulators: the diagonalization showing A^b is not bT-below A,
Shoenfield inversion for the bounded jump, and the c.e. set separating A^b
from A_tt. Every run leaves a replayable JSON-lines trace.

Modules are imported directly (app.constructions.strinc, ...); the native
procedures they register are resolved lazily by the machine.
"""
