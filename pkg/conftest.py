import sys
from pathlib import Path

# let `pytest` work from a fresh checkout without an editable install
_SRC = str(Path(__file__).resolve().parent / "src")
if _SRC not in sys.path:
    sys.path.insert(0, _SRC)
