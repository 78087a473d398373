import sys

from qrank.main import main

sys.exit(main())
