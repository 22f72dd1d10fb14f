"""Entry point for `python -m rv32sim`."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
