import sys

from ehcrn.cli import main

sys.exit(main())
