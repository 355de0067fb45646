import sys

from qasl.cli import main

sys.exit(main())
