"""Unit square on [1.65, 1.95]: effect of the Tikhonov parameter eta."""
import os

import numpy as np

from _runner import overlay, parser, read_detected, read_scan, scan

ETAS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)


def main():
    args = parser(__doc__, "square_eta_sweep").parse_args()
    curves = []
    for eta in ETAS:
        path = scan(args.outdir, f"eta{eta:g}", "square", 1.65, 1.95, 100, "--eta", eta,
                    workers=args.workers, n=args.n)
        _, lg = read_scan(path)
        print(f"eta = {eta:g}: floor (median log10) {np.nanmedian(lg):.2f}, peak {np.nanmax(lg):.2f}, "
              f"detected {[round(k.real, 4) for k in read_detected(path)]}")
        curves.append((f"eta = {eta:g}", path))
    print("figure:", overlay(os.path.join(args.outdir, "eta_overlay.png"), curves))


if __name__ == "__main__":
    main()
