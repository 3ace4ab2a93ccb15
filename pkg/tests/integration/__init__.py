"""Integration tests for logfold."""
