"""Disk of radius 1/2: real-axis scans against the exact Bessel roots."""
import os

from _runner import parser, read_detected, report, run, scan

INTERVALS = ((2.3, 2.8, 100), (3.0, 3.5, 100), (3.5, 4.0, 100), (4.0, 5.0, 200))


def main():
    args = parser(__doc__, "disk_intervals").parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    oracle = os.path.join(args.outdir, "oracle.csv")
    run(["disk-oracle", "--interval", 1.5, 5, "--output", oracle])
    with open(oracle) as fh:
        roots = [float(line.split(",")[0]) for line in fh.readlines()[1:]]
    for a, b, n_sub in INTERVALS:
        path = scan(args.outdir, f"disk_{a:g}_{b:g}", "disk", a, b, n_sub, "--eta", 0,
                    workers=args.workers, n=args.n)
        report(f"[{a:g}, {b:g}]", read_detected(path), [k for k in roots if a <= k <= b], 0.01, path)


if __name__ == "__main__":
    main()
