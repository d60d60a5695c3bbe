"""Executable gadget reductions from OuMv, CNF-SAT and triangle collection* to
partially dynamic matching, max-flow and diameter, checked against brute force."""

__version__ = "0.1.0"
