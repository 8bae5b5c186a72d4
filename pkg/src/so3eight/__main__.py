import sys

from so3eight.cli import main

sys.exit(main())
