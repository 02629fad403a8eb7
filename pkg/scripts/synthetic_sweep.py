"""Generate a synthetic corpus and run the full accuracy sweep on it.

    python3 scripts/synthetic_sweep.py --out runs/sweep --seed 42
    python3 scripts/synthetic_sweep.py --out runs/sweep10 --ngram-counts 10 --fused

Writes the same report files as ``microattrib evaluate`` and prints the markdown
accuracy table.
"""

import argparse
import json
import time
from pathlib import Path

from microattrib.attribution import ProfileConfig, dump_json
from microattrib.evaluation import DEFAULT_FEATURES, SweepConfig, render_report, run_sweep
from microattrib.synthgen import DEFAULT_SPREAD, generate_corpus

FILES = {"json": "report.json", "csv": "accuracy.csv", "table_csv": "tables.csv", "markdown": "report.md"}


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--authors", type=int, default=40)
    parser.add_argument("--msgs", type=int, nargs=2, default=(120, 200), metavar=("MIN", "MAX"))
    parser.add_argument("--spread", type=float, default=DEFAULT_SPREAD)
    parser.add_argument("--counts", default="5,10,15,20,25,30,35,40")
    parser.add_argument("--ngram-counts", help="only run n-gram features at these author counts")
    parser.add_argument("--fused", action="store_true")
    args = parser.parse_args()

    synth = generate_corpus(args.authors, tuple(args.msgs), args.spread, args.seed)
    config = SweepConfig(
        author_counts=tuple(int(c) for c in args.counts.split(",")),
        features=DEFAULT_FEATURES,
        seed=args.seed,
        fused=args.fused,
        ngram_author_counts=tuple(int(c) for c in args.ngram_counts.split(",")) if args.ngram_counts else None,
    )
    start = time.perf_counter()
    report = run_sweep(synth.corpus(), config, ProfileConfig(dictionary=synth.dictionary, slang_lexicon=synth.slang_lexicon))
    elapsed = time.perf_counter() - start

    args.out.mkdir(parents=True, exist_ok=True)
    for fmt, name in FILES.items():
        (args.out / name).write_bytes(render_report(report, fmt))
    dump_json({"generator": {"authors": args.authors, "msgs": list(args.msgs), "spread": args.spread, "seed": args.seed},
               "sweep": config.to_dict()}, args.out / "manifest.json")
    print(render_report(report, "markdown").decode("utf-8").split("\n# Shortest")[0])
    print(json.dumps({"seconds": round(elapsed, 1), "out": str(args.out)}))


if __name__ == "__main__":
    main()
