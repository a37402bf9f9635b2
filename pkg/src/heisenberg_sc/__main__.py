import sys

from heisenberg_sc.cli import main

sys.exit(main())
