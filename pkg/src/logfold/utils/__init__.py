"""Shared utilities for logfold."""
