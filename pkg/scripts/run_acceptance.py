"""Print one PASS/FAIL line per acceptance criterion."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import CRITERIA, evaluate  # noqa: E402

if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, line = evaluate(n)
        failed += not ok
        print(line, flush=True)
    sys.exit(1 if failed else 0)
