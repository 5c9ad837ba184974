import sys

from bistsim.cli import main

sys.exit(main())
