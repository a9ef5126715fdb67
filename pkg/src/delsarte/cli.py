"""Command line front end.

Exit codes: 0 success, 2 validation error, 3 golden mismatch, 4 internal
assertion.
"""

from __future__ import annotations

import argparse
import sys
import traceback

from .batch import BatchConfig, batch_run, dumps
from .paper_examples import run_paper_examples
from .quotient import FiniteQuotient, QuotientError, parse_kernel_matrix
from .report import ReportAssertionError, analyze

EXIT_OK, EXIT_VALIDATION, EXIT_GOLDEN, EXIT_ASSERTION = 0, 2, 3, 4


class ValidationError(ValueError):
    pass


def _int_list(text: str, n: int | None, what: str) -> list[int]:
    try:
        vals = [int(x) for x in text.replace("−", "-").split(",")]
    except ValueError:
        raise ValidationError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise ValidationError(f"{what}: expected {n} integers, got {len(vals)}")
    return vals


def quotient_from_args(args) -> FiniteQuotient:
    if args.matrix is not None:
        return FiniteQuotient.from_kernel_matrix(parse_kernel_matrix(args.matrix))
    if args.fermat is not None:
        return FiniteQuotient.fermat(args.fermat)
    if args.diagonal is not None:
        return FiniteQuotient.diagonal(*_int_list(args.diagonal, 3, "--diagonal"))
    if args.cyclic is not None:
        m, sep, ws = args.cyclic.partition(":")
        if not sep:
            raise ValidationError("--cyclic: expected m:w0,w1,w2,w3")
        return FiniteQuotient.cyclic(_int_list(m, 1, "--cyclic m")[0], _int_list(ws, 4, "--cyclic weights"))
    return FiniteQuotient.from_exponent_matrix(parse_kernel_matrix(args.exponent, size=4))


def _human(data: dict) -> str:
    g = data["group"]
    lines = [
        f"kernel        {data['input']['kernel']}",
        f"G             factors {g['factors']}, |G| = {g['order']}, exp = {g['exponent']}, height = {g['height']}",
        f"delta         {data['subgroup_orders']['delta']}",
        f"pi1 order     {data['pi1']['order']}",
        f"rank K        {data['rank_K']['snf']} (formula {data['rank_K']['formula']})",
        f"T             {data['torsion_T']}",
        f"Tors B'       {data['torsion_Bprime']}",
        f"best bound    {data['bounds']['best']['bound_layers']} via {data['bounds']['best']['permutation']}",
    ]
    if data["cyclic"] is not None:
        lines.append(f"cyclic check  {'ok' if data['cyclic']['verification']['ok'] else 'MISMATCH'}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    q = quotient_from_args(args)
    data = analyze(q, all_permutation_bounds=args.all_permutation_bounds).data
    print(dumps(data) if args.json else _human(data))
    return EXIT_OK


def cmd_paper_examples(args) -> int:
    checks = run_paper_examples()
    width = max(len(c.example) for c in checks)
    for c in checks:
        if args.json:
            print(dumps(c.to_dict()))
        else:
            status = "ok  " if c.ok else "FAIL"
            extra = "" if c.ok else f"  expected {c.expected}, got {c.got}"
            print(f"{status} {c.example:<{width}}  {c.quantity}{extra}")
    failed = sum(not c.ok for c in checks)
    if not args.json:
        print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_GOLDEN if failed else EXIT_OK


def cmd_batch(args) -> int:
    config = BatchConfig(
        seed=args.seed,
        count=args.count,
        diag=tuple(_int_list(args.diag, 3, "--diag")),
        bound=args.bound,
        jobs=args.jobs,
    )
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        summary = batch_run(config, fh)
    print(dumps(summary))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delsarte", description="Invariants of Delsarte surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full invariant report for one quotient")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="kernel matrix, e.g. 'diag(1,8,8)*[[4,7,1],[1,0,0],[0,1,0]]'")
    src.add_argument("--fermat", type=int, metavar="M")
    src.add_argument("--diagonal", metavar="M1,M2,M3")
    src.add_argument("--cyclic", metavar="M:W0,W1,W2,W3")
    src.add_argument("--exponent", metavar="A", help="4x4 exponent matrix")
    a.add_argument("--json", action="store_true", help="emit one JSON object")
    a.add_argument("--all-permutation-bounds", action="store_true")
    a.set_defaults(func=cmd_analyze)

    p = sub.add_parser("paper-examples", help="regression suite over the published examples")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paper_examples)

    b = sub.add_parser("batch", help="seeded random quotients to JSONL")
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--diag", required=True, metavar="D1,D2,D3")
    b.add_argument("--bound", type=int, default=3)
    b.add_argument("--out", required=True)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_VALIDATION if e.code else EXIT_OK
    try:
        return args.func(args)
    except (QuotientError, ValidationError, ValueError) as e:
        condition = getattr(e, "condition", None)
        suffix = f" [condition {condition}]" if condition else ""
        print(f"error: {e}{suffix}", file=sys.stderr)
        return EXIT_VALIDATION
    except ReportAssertionError as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        print(dumps(e.bundle), file=sys.stderr)
        return EXIT_ASSERTION
    except AssertionError as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
