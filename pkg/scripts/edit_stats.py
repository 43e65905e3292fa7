"""Per-edit-kind statistics over generated revision pairs.

For each kind of synthetic edit, report how many AST changes and AST hunks
it produces on average and which catalog patterns it triggers.
"""

import argparse
import random
from collections import Counter, defaultdict

from astchange.diff_engine import extract_changes
from astchange.hunking import hunks_for, line_diff
from astchange.matcher import classify_revision
from astchange.patterns import builtin_catalog
from astchange.synth import Generator, Mutator, random_pair
from astchange.syntax import parse_source


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", "--per-edit", type=int, default=100)
    args = ap.parse_args()
    catalog = builtin_catalog()
    edits = sorted(_edit_names())
    rows = []
    for edit in edits:
        stats = defaultdict(int)
        patterns = Counter()
        for seed in range(args.per_edit):
            old, new, _ = random_pair(seed, edits=1, ops=(edit,))
            changes = extract_changes(parse_source(old), parse_source(new))
            hunks = hunks_for(changes)
            stats["changes"] += len(changes)
            stats["hunks"] += len(hunks)
            stats["lines"] += len(line_diff(old.splitlines(), new.splitlines()))
            patterns.update(i.pattern_id for i in classify_revision(catalog, hunks))
        n = args.per_edit
        top = ", ".join(f"{k}:{v}" for k, v in patterns.most_common(3)) or "-"
        rows.append((edit, stats["changes"] / n, stats["hunks"] / n, stats["lines"] / n, top))
    print(f"{'edit':<14} {'changes':>8} {'ast hunks':>10} {'line hunks':>11}  top patterns")
    for edit, c, h, l, top in rows:
        print(f"{edit:<14} {c:>8.2f} {h:>10.2f} {l:>11.2f}  {top}")


def _edit_names():
    return list(Mutator(random.Random(0), Generator(random.Random(0))).ops)


if __name__ == "__main__":
    main()
