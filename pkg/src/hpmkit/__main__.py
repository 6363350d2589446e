import sys

from hpmkit.cli import main

sys.exit(main())
