"""Allow ``python -m vecflow`` as an alias for the console script."""

import sys

from vecflow.cli import main

if __name__ == "__main__":
    sys.exit(main())
