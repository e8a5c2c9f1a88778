"""Utilities for file I/O."""

from pathlib import (
    Path)


def dir_exists(path: str) -> bool:
    """Return whether the specified path leads to a directory."""
    return Path(path).is_dir()


def file_exists(path: str) -> bool:
    """Return whether the specified path leads to a file."""
    return Path(path).is_file()


def create_dir(path: str) -> None:
    """Create a directory (and parents), tolerating an existing one."""
    Path(path).mkdir(parents=True, exist_ok=True)


def read_text(path: str) -> str:
    """Read a UTF-8 text file."""
    return Path(path).read_text(encoding='utf-8')


def write_text(path: str, contents: str) -> None:
    """Write a UTF-8 text file with Unix newlines."""
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(contents)
