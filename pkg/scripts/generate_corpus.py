"""Write a synthetic corpus of single-file revision pairs for mining."""

import argparse

from astchange.synth import BENCH_CONFIG, write_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", help="target directory (corpus layout)")
    ap.add_argument("-n", "--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ids = write_corpus(args.out, args.count, seed=args.seed, config=BENCH_CONFIG)
    print(f"wrote {len(ids)} commits to {args.out}")


if __name__ == "__main__":
    main()
