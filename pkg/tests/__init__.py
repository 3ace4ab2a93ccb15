"""Test suite for logfold."""
