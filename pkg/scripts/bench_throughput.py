"""Time mining over a freshly generated synthetic corpus."""

import argparse
import tempfile
import time
from pathlib import Path

from astchange.miner import MiningOptions, mine
from astchange.patterns import builtin_catalog
from astchange.synth import BENCH_CONFIG, write_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", "--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        write_corpus(root, args.count, seed=args.seed, config=BENCH_CONFIG)
        sizes = [len((d / "old" / "Unit.java").read_text().splitlines()) for d in root.iterdir()]
        start = time.perf_counter()
        report = mine(root, builtin_catalog(), MiningOptions(workers=args.workers))
        elapsed = time.perf_counter() - start

    print(f"pairs {report.revisions}, mean lines {sum(sizes) / len(sizes):.0f}, workers {args.workers}")
    print(f"elapsed {elapsed:.2f}s ({1000 * elapsed / max(report.revisions, 1):.1f} ms/pair)")
    print()
    print(report.table())


if __name__ == "__main__":
    main()
