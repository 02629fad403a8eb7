"""Accuracy as a function of the generator's inter-author style spread.

Prints CSV (spread, feature, metric, mean_accuracy, min, max) averaged over seeds.

    python3 scripts/spread_sensitivity.py --spreads 0,0.05,0.1,0.2,0.4,0.8 --seeds 5
"""

import argparse
import csv
import statistics
import sys

from microattrib.attribution import FeatureKind
from microattrib.evaluation import SweepConfig, run_sweep
from microattrib.synthgen import generate_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--spreads", default="0,0.05,0.1,0.2,0.4,0.8")
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--authors", type=int, default=10)
    parser.add_argument("--msgs", type=int, nargs=2, default=(20, 30), metavar=("MIN", "MAX"))
    parser.add_argument("--features", default="char3,word2,lexical,structural")
    parser.add_argument("--metrics", default="cosine,euclidean,manhattan")
    args = parser.parse_args()

    features = tuple(FeatureKind.parse(f) for f in args.features.split(","))
    config = SweepConfig(author_counts=(args.authors,), features=features, metrics=tuple(args.metrics.split(",")))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["spread", "feature", "metric", "mean_accuracy", "min", "max"])
    for spread in (float(s) for s in args.spreads.split(",")):
        runs = [run_sweep(generate_corpus(args.authors, tuple(args.msgs), spread, seed).corpus(), config).cells
                for seed in range(args.seeds)]
        for key in sorted(runs[0]):
            accs = [cells[key] for cells in runs]
            writer.writerow([spread, key[0], key[1], f"{statistics.fmean(accs):.4f}", f"{min(accs):.4f}", f"{max(accs):.4f}"])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
