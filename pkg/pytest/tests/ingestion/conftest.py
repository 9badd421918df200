from collections.abc import Callable
from pathlib import Path

import pytest


@pytest.fixture()
def write_csv(tmp_path: Path) -> Callable[..., Path]:
    """Write raw CSV text (lines joined with newlines) into a temp file and return its path."""

    def write(name: str, *lines: str) -> Path:
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return write
