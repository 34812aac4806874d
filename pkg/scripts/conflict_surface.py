"""Write the |K| surface for the two-element example and optionally plot it.

    python3 scripts/conflict_surface.py --grid-step 0.02 --output k.csv [--png k.png]

Plotting needs matplotlib, which the package itself does not depend on.
"""

import argparse

from complex_ds import documents as docs
from complex_ds.evidence import conflict_surface


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid-step", type=float, default=0.02)
    parser.add_argument("--output", default="conflict_surface.csv")
    parser.add_argument("--png")
    args = parser.parse_args()

    rows = conflict_surface(args.grid_step)
    docs.atomic_write(args.output, docs.surface_csv(rows))
    peak = max(rows, key=lambda r: r[2])
    print(f"{len(rows)} feasible points, max |K| = {peak[2]:.4f} at ({peak[0]:.3f}, {peak[1]:.3f})")

    if args.png:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        x, y, k = zip(*rows)
        fig, ax = plt.subplots(figsize=(5, 5))
        sc = ax.scatter(x, y, c=k, s=8, cmap="viridis")
        fig.colorbar(sc, label="|K|")
        ax.set_xlabel("Re m(A)")
        ax.set_ylabel("Im m(A)")
        ax.set_aspect("equal")
        fig.savefig(args.png, dpi=150, bbox_inches="tight")
        print(f"wrote {args.png}")


if __name__ == "__main__":
    main()
