"""CLI interface for logfold."""
