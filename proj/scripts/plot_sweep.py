#!/usr/bin/env python3
"""Plot error-rate curves from a sweep CSV produced by `rissk sweep`.

One line per (scheme, N, N_R, m, k) group: analytic PED versus average SNR,
with Monte Carlo estimates overlaid as markers and error bars when the CSV
carries them.  Empty fields in the CSV are absent values.
"""

import argparse
import csv
import math
import sys
from collections import defaultdict


def load_rows(path):
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            yield row


def group_key(row):
    label = row["scheme"]
    if row["M"]:
        label += "-" + row["M"]
    return (label, row["N"], row["N_R"], row["m"], row["k"])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_path", help="CSV written by `rissk sweep`")
    ap.add_argument("-o", "--output", help="image path (default: show interactively)")
    ap.add_argument("--ber", action="store_true", help="plot the union BER bound instead of PED")
    ap.add_argument("--floor", type=float, default=1e-9, help="clip probabilities below this")
    args = ap.parse_args()

    try:
        import matplotlib

        if args.output:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required: pip install matplotlib")

    column = "ber_bound" if args.ber else "ped_analytic"
    groups = defaultdict(list)
    for row in load_rows(args.csv_path):
        if args.ber and not row["ber_bound"]:
            continue
        groups[group_key(row)].append(row)

    if not groups:
        sys.exit("no usable rows in " + args.csv_path)

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for key, rows in sorted(groups.items()):
        label_scheme, n, n_r, m, k = key
        rows.sort(key=lambda r: float(r["gamma_db"]))
        snr = [float(r["gamma_db"]) for r in rows]
        analytic = [max(float(r[column]), args.floor) for r in rows]
        label = f"{label_scheme} N={n} $N_R$={n_r} m={m} k={k}"
        (line,) = ax.semilogy(snr, analytic, label=label)
        if not args.ber:
            mc_pts = [(float(r["gamma_db"]), float(r["ped_mc"]), float(r["ped_mc_stderr"]))
                      for r in rows if r["ped_mc"]]
            if mc_pts:
                xs, ys, errs = zip(*mc_pts)
                ys = [max(y, args.floor) for y in ys]
                ax.errorbar(xs, ys, yerr=[min(2 * e, y * 0.999) for y, e in zip(ys, errs)],
                            fmt="o", ms=4, color=line.get_color(), linestyle="none",
                            capsize=2)

    ax.set_xlabel("average SNR (dB)")
    ax.set_ylabel("union BER bound" if args.ber else "index-error probability")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=7)
    fig.tight_layout()

    if args.output:
        fig.savefig(args.output, dpi=160)
        print(f"wrote {args.output}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
