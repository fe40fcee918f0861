"""Allow ``python3 -m coordne``."""

import sys

from .cli import main

sys.exit(main())
