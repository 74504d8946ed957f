import sys

from qmds.main import main

sys.exit(main())
