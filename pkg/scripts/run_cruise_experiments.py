#!/usr/bin/env python3
"""Run the circle and square cruise experiments and report tracking error.

Writes the standard artifact set (CSV log, metrics, plot script,
manifest) for each trajectory under --out and prints a small summary
table.  Equivalent to two `quadcruise simulate` invocations; kept as a
script so the cruise pair is one command.
"""

import argparse
from pathlib import Path

from quadcruise.cli import EXIT_OK, main as cli_main

SCENARIOS = {
    "circle": [
        "trajectory = circle",
        "circle.radius = 1.0",
        "circle.omega = 0.2",
        "altitude = 1.0",
        "initial.x = 1.0",
        "duration = 120",
        "dt = 0.004",
    ],
    "square": [
        "trajectory = square",
        "square.side = 2.0",
        "square.speed = 0.5",
        "square.dwell = 2.0",
        "altitude = 1.0",
        "initial.x = 1.0",
        "initial.y = -1.0",
        "duration = 28",
        "dt = 0.004",
    ],
}


def run(out_root: Path) -> int:
    for name, lines in SCENARIOS.items():
        out_dir = out_root / name
        out_dir.mkdir(parents=True, exist_ok=True)
        cfg_path = out_dir / "scenario.cfg"
        cfg_path.write_text("\n".join(lines) + "\n")
        print(f"== {name} ==")
        rc = cli_main(["simulate", "--scenario", str(cfg_path),
                       "--out", str(out_dir)])
        if rc != EXIT_OK:
            return rc
        print()
    return EXIT_OK


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/cruise", metavar="DIR")
    args = parser.parse_args()
    raise SystemExit(run(Path(args.out)))
