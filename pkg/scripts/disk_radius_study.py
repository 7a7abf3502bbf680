"""Disk of radius 1/2: indicator on [1.6, 2.2] for three contour radii."""
import os

from _runner import overlay, parser, read_detected, read_scan, report, scan

RADII = (0.005, 0.003, 0.001)


def main():
    args = parser(__doc__, "disk_radius_study").parse_args()
    curves = []
    for r in RADII:
        path = scan(args.outdir, f"r{r:g}", "disk", 1.6, 2.2, 100, "--radius", r, "--eta", 0,
                    workers=args.workers, n=args.n)
        _, lg = read_scan(path)
        print(f"r = {r:g}: floor (median log10) {float(sorted(lg)[len(lg) // 2]):.2f}, "
              f"peak {max(lg):.2f}")
        report(f"r = {r:g}", read_detected(path), [1.9880], 0.01, path)
        curves.append((f"r = {r:g}", path))
    print("figure:", overlay(os.path.join(args.outdir, "radius_overlay.png"), curves, [1.9880]))


if __name__ == "__main__":
    main()
