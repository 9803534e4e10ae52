"""Regenerate the embedded table snapshot from raw UCD files.

usage: python tools/build_tables.py UCD_DIR [OUT_JSON]
"""

import json
import sys
from pathlib import Path

from fsnorm.ucd import EMBEDDED_RESOURCE, load_ucd_dir, to_compact

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "src" / "fsnorm" / "data" / EMBEDDED_RESOURCE


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if not 1 <= len(argv) <= 2:
        print(__doc__.strip().splitlines()[-1], file=sys.stderr)
        return 2
    tables = load_ucd_dir(argv[0])
    out = Path(argv[1]) if len(argv) == 2 else DEFAULT_OUT
    compact = to_compact(tables)
    out.write_text(json.dumps(compact, indent=0, sort_keys=True) + "\n", encoding="utf-8")
    print(
        f"wrote {out}: Unicode {tables.version_string}, "
        f"{len(tables.decompositions)} decompositions, {len(tables.combining_class)} non-zero classes"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
