import sys

from tki.cli import main

sys.exit(main())
