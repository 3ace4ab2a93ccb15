"""Unit tests for logfold."""
