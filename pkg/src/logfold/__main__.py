"""CLI entrypoint for logfold."""

import sys

from logfold.cli.commands import main as _cli


def main() -> None:
    """Run the CLI, mapping Ctrl+C and unexpected crashes to exit codes."""
    try:
        _cli()
    except KeyboardInterrupt:
        sys.exit(130)  # Standard exit code for Ctrl+C
    except Exception as e:
        print(f"Fatal error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
