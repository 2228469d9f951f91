"""
The command-line tool
=====================

Everything above is also reachable from ``curveballs``; each subcommand
prints JSON lines that echo the configuration used.
"""

import json
import tempfile
from pathlib import Path

from curveballs.cli import run_command

work = Path(tempfile.mkdtemp())
(work / "a.jsonl").write_text('{"id": "s", "points": [[0, 0], [1, 0]]}\n')
(work / "b.jsonl").write_text('{"id": "q", "points": [[0, 1], [1, 1]]}\n')


def show(*argv):
    print("$ curveballs", " ".join(argv))
    out = work / "out.jsonl"
    code = run_command([*argv, "-o", str(out)])
    for line in out.read_text().splitlines():
        rec = json.loads(line)
        rec.pop("config", None)
        print("  ", rec)
    print("   exit", code)


show("dist", "--measure", "frechet", "--decide", "--r", "1.0", str(work / "a.jsonl"), str(work / "b.jsonl"))
show("sample-size", "--eps", "0.1", "--delta", "0.05", "--nu", "10")
show("shatter", "--construction", "circle", "--k", "6")

# generated data round-trips through the curve file format
code = run_command(["gen", "--kind", "random_walk", "--n", "200", "--m", "6", "--seed", "5", "-o", str(work / "walks.jsonl")])
(work / "center.jsonl").write_text('{"id": "c", "points": [[0, 0], [1, 1], [2, 0]]}\n')
show("query", "--measure", "discrete-frechet", "--r", "2", "--center", str(work / "center.jsonl"), str(work / "walks.jsonl"))
