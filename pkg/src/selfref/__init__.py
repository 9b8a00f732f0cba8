"""A self-reference laboratory for first-order arithmetic.

The package builds and inspects the classical self-referential artifacts
of arithmetic at desk scale: Gödel coding over a fixed token alphabet,
budgeted three-valued evaluation in the standard model, a constructive
diagonalization engine with checkable fixed-point certificates, Berry-style
shortest-definition experiments, a Hilbert-style proof system for a finite
base theory, and dominating-function probes, all wired to a reporting CLI.
"""

__version__ = "0.1.0"
