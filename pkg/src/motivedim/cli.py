"""Command-line entry point.

Exit codes: 0 success, 1 kernel self-test failure, 2 parse error,
3 validation error (including rejected declared relations), 4 precision
too low, 5 internal inconsistency.
"""

import argparse
import json
import sys

from .errors import (InternalInconsistency, MotivedimError, ParseError,
                     PrecisionTooLow, ValidationError)

EXIT_OK = 0
EXIT_KERNEL_FAIL = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_PRECISION = 4
EXIT_INCONSISTENT = 5


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="motivedim",
        description="Dimension of the motivic Galois group of a "
                    "semi-elliptic 1-motive.")
    ap.add_argument("--input", metavar="PATH",
                    help="input JSON document ('-' for stdin)")
    ap.add_argument("--precision", type=int, default=None, metavar="BITS",
                    help="working precision in bits (default 256)")
    ap.add_argument("--height-bound", type=int, default=None, metavar="N",
                    help="max relation coefficient (default 1000)")
    ap.add_argument("--denominator-bound", type=int, default=None, metavar="N",
                    help="max period-coefficient denominator (default 60)")
    ap.add_argument("--mode", choices=["numeric", "declared"], default=None,
                    help="override the document's mode")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--verify-kernel", action="store_true",
                    help="run the elliptic-kernel self-test and exit")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for the self-test point generator")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.verify_kernel:
        from .kernelcheck import run_kernel_checks
        lines, _, passed = run_kernel_checks(
            precision=args.precision or 256, seed=args.seed)
        print("\n".join(lines))
        return EXIT_OK if passed else EXIT_KERNEL_FAIL

    if not args.input:
        print("error: --input is required (or use --verify-kernel)",
              file=sys.stderr)
        return EXIT_PARSE

    from .report import run, to_json, to_text
    try:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE

    overrides = {
        "precision": args.precision,
        "height_bound": args.height_bound,
        "denominator_bound": args.denominator_bound,
        "mode": args.mode,
    }
    try:
        out = run(doc, overrides)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        if e.certificate is not None:
            print(json.dumps({"certificate": e.certificate}, sort_keys=True),
                  file=sys.stderr)
        return EXIT_VALIDATION
    except PrecisionTooLow as e:
        print(f"precision too low: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except MotivedimError as e:
        # remaining domain errors indicate invalid input data
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION

    sys.stdout.write(to_json(out) if args.format == "json" else to_text(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
