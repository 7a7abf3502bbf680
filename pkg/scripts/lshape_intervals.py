"""L-shaped domain: three intervals against reference eigenvalues."""
from _runner import parser, read_detected, report, scan

REFERENCE = (1.5541, 1.8920, 2.1131, 2.4937, 2.5226, 2.7349)


def main():
    args = parser(__doc__, "lshape_intervals").parse_args()
    for a, b in ((1.5, 2.0), (2.0, 2.5), (2.5, 3.0)):
        path = scan(args.outdir, f"lshape_{a:g}_{b:g}", "lshape", a, b, 200,
                    workers=args.workers, n=args.n)
        report(f"[{a:g}, {b:g}]", read_detected(path), [k for k in REFERENCE if a <= k <= b], 0.02, path)


if __name__ == "__main__":
    main()
