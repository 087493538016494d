"""Write the bundled golden instances and their expected result documents.

Expected documents come from ``polyspace-ilp oracle`` (brute force over a
proven l1 cap plus LP certificates), never from the solver under test.
"""

import contextlib
import io
import json
import random
import sys
from pathlib import Path

from polyspace_ilp.cli import format_instance, main
from polyspace_ilp.core import Instance
from polyspace_ilp.generate import random_instance

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden"


def picked():
    yield "small_lex_tie", Instance.create([[1, 2]], [4], [1, 1])
    yield "parity_infeasible", Instance.create([[2, 4]], [5], [0, 0])
    yield "unbounded_ray", Instance.create([[1, -1]], [0], [-1, -1])
    yield "two_rows", random_instance(random.Random(11), 2, 4, 3, 8, 4, "nonneg")
    yield "three_rows_mixed", Instance.create(
        [[1, 0, 2, -1, 1], [0, 1, 1, 2, -1], [1, 1, 0, 1, 1]], [4, 3, 5], [2, 1, 3, -1, 2], 3)


def oracle_document(path: Path) -> dict:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(["oracle", "--input", str(path)])
    doc = json.loads(buf.getvalue())
    doc.pop("oracle")
    return doc


def run():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, inst in picked():
        src = OUT / f"{name}.txt"
        src.write_text(format_instance(inst, name))
        doc = oracle_document(src)
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(name, doc["status"], doc.get("x"), file=sys.stderr)


if __name__ == "__main__":
    run()
