import sys

from gpsolid.cli.main import main

sys.exit(main())
