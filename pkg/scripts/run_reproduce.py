"""Run the full reproduction twice and confirm the JSON is byte-identical."""

import argparse
import json
import sys

from cubicsheaves.reproduce import ReproduceConfig, reproduce
from cubicsheaves.samples import DEFAULT_SEED


def dump(config):
    return json.dumps([r.to_json() for r in reproduce(config)], indent=2)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--samples", type=int, default=50)
    args = ap.parse_args()
    config = ReproduceConfig(seed=args.seed, samples=args.samples)
    first, second = dump(config), dump(config)
    reports = json.loads(first)
    for r in reports:
        print(f"{r['status']:<5} {r['check']}")
    failed = [r["check"] for r in reports if r["status"] != "pass"]
    print(f"{len(reports) - len(failed)}/{len(reports)} pass; deterministic: {first == second}")
    sys.exit(1 if failed or first != second else 0)


if __name__ == "__main__":
    main()
