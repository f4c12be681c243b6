import sys

from zeropi._cli._main import main

sys.exit(main())
