"""Utilities for console I/O.

Status lines are written to stderr so that stdout only carries the document
a command was asked to produce.
"""

import sys

from colorama import (
    Fore,
    Style)
from typing import (
    Any,
    Callable)

_quiet = False


def red(s: str) -> str:
    """Add escape sequences to print a string red."""
    return Fore.RED + s + Style.RESET_ALL


def blue(s: str) -> str:
    """Add escape sequences to print a string blue."""
    return Fore.CYAN + s + Style.RESET_ALL


def yellow(s: str) -> str:
    """Add escape sequences to print a string yellow."""
    return Fore.YELLOW + s + Style.RESET_ALL


def set_quiet(quiet: bool) -> None:
    """Suppress (or re-enable) informational status lines."""
    global _quiet
    _quiet = quiet


def _printer(tag: str, info: bool=False) -> Callable[..., None]:
    def _print(*args: Any) -> None:
        if info and _quiet:
            return
        print(tag, *args, sep='', file=sys.stderr)
    return _print


print_i_d1 = _printer(blue('[I] '), info=True)
print_w_d1 = _printer(yellow('[W] '))
print_e_d1 = _printer(red('[E] '))
print_i_d2 = _printer(blue('  [I] '), info=True)
print_w_d2 = _printer(yellow('  [W] '))
print_e_d2 = _printer(red('  [E] '))
