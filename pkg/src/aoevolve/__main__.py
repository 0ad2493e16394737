import sys

from aoevolve.cli import main

sys.exit(main())
