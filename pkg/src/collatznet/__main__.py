import sys

from collatznet.cli import main

sys.exit(main())
