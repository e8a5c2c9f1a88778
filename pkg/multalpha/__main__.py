"""Main entry point for the multalpha program."""

import sys

from multalpha.cli import (
    main as cli_main)


def main():
    """The function pointed to by `multalpha` in console_scripts."""
    sys.exit(cli_main())


if __name__ == '__main__':
    main()
