"""Disk of radius 1/2: the complex pair near 4.90 +- 0.58i."""
import os

from _runner import parser, read_detected, report, run


def main():
    args = parser(__doc__, "disk_complex_pair").parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    for sign, window in ((+1, (4.85, 4.95, 0.5, 0.7)), (-1, (4.85, 4.95, -0.7, -0.5))):
        path = os.path.join(args.outdir, f"complex_{'upper' if sign > 0 else 'lower'}.csv")
        run(["scan-complex", "--shape", "disk", "--window", *window, 20, 200, "--eta", 0,
             "--n", args.n, "--workers", args.workers, "--output", path, "--plot"])
        report(f"window {window}", read_detected(path), [complex(4.90, sign * 0.58)], 0.02, path)


if __name__ == "__main__":
    main()
