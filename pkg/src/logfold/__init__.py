"""
logfold: event log simplification guarded by remaining-time prediction quality.

This package discovers a Petri net and a resource community network from an
event log, protects one prediction point per community, folds sequence / or /
self-loop substructures, and keeps only the folds whose prediction deviation
fits a budget.
"""

__version__ = "0.1.0"
__author__ = "LogFold Contributors"
