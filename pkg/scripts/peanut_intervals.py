"""Peanut-shaped domain: scans of [1.3, 1.6] and [1.65, 2] (no printed reference values)."""
from _runner import parser, read_detected, read_scan, scan


def main():
    args = parser(__doc__, "peanut_intervals").parse_args()
    for a, b in ((1.3, 1.6), (1.65, 2.0)):
        path = scan(args.outdir, f"peanut_{a:g}_{b:g}", "peanut", a, b, 200,
                    workers=args.workers, n=args.n)
        _, lg = read_scan(path)
        print(f"[{a:g}, {b:g}]: peak log10 {max(lg):.2f}, detected "
              f"{[round(k.real, 4) for k in read_detected(path)]}")


if __name__ == "__main__":
    main()
