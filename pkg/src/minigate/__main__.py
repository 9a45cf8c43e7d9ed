"""支持 `python -m minigate`。"""

import sys

from minigate.cli import main

if __name__ == "__main__":
    sys.exit(main())
