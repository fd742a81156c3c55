#!/usr/bin/env python3
"""Regenerate docs/scenarios/*.json from the built-in catalog."""

import pathlib
import sys

from mixorder import builtin_catalog, save_scenario


def main(out_dir="docs/scenarios"):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for s in builtin_catalog():
        path = out / f"{s.scenario_id.replace('.', '_')}.json"
        save_scenario(s, path)
        print(path)


if __name__ == "__main__":
    main(*sys.argv[1:])
