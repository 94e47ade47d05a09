import sys

from flagpos.cli import main

sys.exit(main())
