"""Regular pentagon: three intervals against reference eigenvalues."""
from _runner import parser, read_detected, report, scan

REFERENCE = (1.8945, 2.2563, 2.4724, 2.6432, 2.8769, 2.9146, 2.9523)


def main():
    args = parser(__doc__, "pentagon_intervals").parse_args()
    for a, b in ((1.5, 2.0), (2.0, 2.5), (2.5, 3.0)):
        path = scan(args.outdir, f"pentagon_{a:g}_{b:g}", "pentagon", a, b, 200,
                    workers=args.workers, n=args.n)
        report(f"[{a:g}, {b:g}]", read_detected(path), [k for k in REFERENCE if a <= k <= b], 0.02, path)


if __name__ == "__main__":
    main()
