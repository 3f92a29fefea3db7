import sys

from celcs.cli import main

sys.exit(main())
