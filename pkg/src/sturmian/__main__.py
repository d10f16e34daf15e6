"""python -m sturmian entry point."""

import sys

from sturmian.cli import main

sys.exit(main())
