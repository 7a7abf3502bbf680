"""Equilateral triangle: scans of three intervals with automatic regularisation."""
from _runner import parser, read_detected, read_scan, scan


def main():
    args = parser(__doc__, "triangle_intervals").parse_args()
    for a, b in ((1.65, 1.95), (2.1, 2.4), (2.7, 3.0)):
        path = scan(args.outdir, f"triangle_{a:g}_{b:g}", "triangle", a, b, 100,
                    workers=args.workers, n=args.n)
        _, lg = read_scan(path)
        print(f"[{a:g}, {b:g}]: peak log10 {max(lg):.2f}, detected "
              f"{[round(k.real, 4) for k in read_detected(path)]}")


if __name__ == "__main__":
    main()
