#!/usr/bin/env -S python3

from reversible_bcd import cli
import sys


if __name__ == "__main__":
    sys.exit(cli.main())
