"""Atomic file writes: every artifact goes to a temp file, then is renamed into place."""

import os
import tempfile
from pathlib import Path

from logfold.utils.exceptions import LogFoldError


def atomic_write_text(path: Path | str, text: str, encoding: str = "utf-8") -> Path:
    """
    Write text to ``path`` so that readers never observe a partial file.

    Args:
        path: Destination file
        text: Full file contents
        encoding: Text encoding (default UTF-8)

    Returns:
        The destination path

    Raises:
        LogFoldError: If the directory cannot be created or the write fails
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise LogFoldError(f"Failed to create output directory: {path.parent}. Error: {e}") from e

    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding=encoding, newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except OSError as e:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise LogFoldError(f"Failed to write {path}: {e}") from e
    return path
