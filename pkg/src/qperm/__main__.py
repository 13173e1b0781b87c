import sys

from qperm.cli import main

sys.exit(main())
