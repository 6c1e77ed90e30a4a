#!/usr/bin/env python3
"""Run the complete identity-verification suite and write a JSON report.

Equivalent to `lerchsum suite`, kept as a script entry point for batch use:

    python scripts/run_full_suite.py [--count N] [--seed N] [--out PATH]
"""

import sys

from lerchsum.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite"] + sys.argv[1:]))
