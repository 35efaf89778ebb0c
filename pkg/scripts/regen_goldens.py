"""Rewrite tests/golden/*.json from the example descriptors."""
import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

from sym3.cli import main

ROOT = Path(__file__).resolve().parent.parent


def render(descriptor: Path, fmt: str = "json") -> str:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["conductor", "--input", str(descriptor), "--format", fmt])
    if code:
        sys.exit(f"{descriptor}: exit code {code}")
    return buf.getvalue()


if __name__ == "__main__":
    out = ROOT / "tests" / "golden"
    out.mkdir(exist_ok=True)
    for d in sorted((ROOT / "descriptors").glob("*.json")):
        (out / d.name).write_text(render(d))
        print(f"wrote {out / d.name}")
