"""Fit the four shipped datasets and print fitted rows next to the published ones.

    python3 scripts/reproduce_published_rows.py [--csv out.csv] [--scaling unit_spectrum]
"""

import argparse
import time

from complex_ds import documents as docs
from complex_ds.fitting import FitConfig, evaluate_report
from complex_ds.quantum import ModelConfig

FIXTURES = ("busemeyer2009.json", "wang_exp1.json", "wang_exp2.json", "wang_exp3.json")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv")
    parser.add_argument("--scaling", default="paper_literal", choices=("paper_literal", "unit_spectrum"))
    parser.add_argument("--alone-measure", default="attack_consistent",
                        choices=("paper_literal", "attack_consistent"))
    parser.add_argument("--starts", type=int, default=64)
    args = parser.parse_args()

    cfg = FitConfig(starts=args.starts, model=ModelConfig(scaling=args.scaling, alone_measure=args.alone_measure))
    datasets = [docs.load_dataset(docs.fixture_path(f)) for f in FIXTURES]
    start = time.perf_counter()
    report = evaluate_report(datasets, cfg)
    elapsed = time.perf_counter() - start

    print(docs.report_text(report, with_reference=True))
    for name, (ctd, alone) in report.fits.items():
        print(f"{name:22s} c-then-d h = ({ctd.params.h_g:+.4f}, {ctd.params.h_b:+.4f}, {ctd.params.h_u:+.4f})"
              f" sse {ctd.sse:.1e} | d-alone h = ({alone.params.h_g:+.4f}, {alone.params.h_b:+.4f})"
              f" sse {alone.sse:.1e}")
    print(f"\n{len(datasets)} datasets fitted in {elapsed:.1f} s")
    if args.csv:
        docs.atomic_write(args.csv, docs.report_csv(report, with_reference=True))


if __name__ == "__main__":
    main()
