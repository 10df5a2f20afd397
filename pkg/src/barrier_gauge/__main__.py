import sys

from barrier_gauge.cli import main

sys.exit(main())
