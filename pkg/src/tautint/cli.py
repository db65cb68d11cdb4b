"""Command-line front end.

Subcommands
-----------
psi        one psi-monomial intersection number in genus 0 or 1
pullback   integral against the forgetful pullback of a stratum class
lambda2    genus-2 Hodge-class integral by a chosen route
verify     multi-route agreement table over all partitions up to --n-max

Exit codes: 0 success, 1 domain error (with a message on stderr), 2 usage
error, 3 verification disagreement.  All rationals are printed exactly as
"p/q" (or "p" for integers).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field

from .arith import format_rational
from .identities import (
    VERIFY_METHODS,
    lambda2_closed,
    lambda2_integral,
    verify,
)
from .psi import ModuliIndex, psi_integral
from .strata import (
    BUILTIN_GRAPHS,
    GraphParseError,
    InvalidGraphError,
    builtin_graph,
    parse_graph,
    pullback_integral,
)

__all__ = ["OutputRecord", "build_parser", "main", "CSV_COLUMNS"]

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_DISAGREE = 3

# Fixed verification table schema, one stable layout for regression diffing.
CSV_COLUMNS = ("n", "partition") + VERIFY_METHODS + ("agree",)

# verify enumerates 2^n strata per partition; past this, require --hard.
SOFT_N_MAX = 12


@dataclass
class OutputRecord:
    """JSON-serializable result envelope; round-trips losslessly."""

    command: str
    inputs: dict
    results: list[dict] = field(default_factory=list)
    agree: bool | None = None

    def to_dict(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "results": self.results}
        if self.agree is not None:
            out["agree"] = self.agree
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "OutputRecord":
        return cls(
            command=data["command"],
            inputs=data["inputs"],
            results=data["results"],
            agree=data.get("agree"),
        )

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls.from_dict(json.loads(text))


def _exponents_arg(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers such as 2,1,0 — got {text!r}"
        )
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"exponents must be nonnegative, got {text!r}")
    return values


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautint",
        description="Exact tautological intersection numbers on moduli of stable curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_psi = sub.add_parser("psi", help="psi-monomial intersection number in genus 0 or 1")
    p_psi.add_argument("--genus", type=int, choices=(0, 1), required=True)
    p_psi.add_argument("--k", type=_exponents_arg, required=True, metavar="K1,K2,...",
                       help="psi exponents, one per marked point")
    p_psi.add_argument("--json", action="store_true", help="emit a JSON record")

    p_pull = sub.add_parser("pullback", help="integral against a pulled-back stratum class")
    p_pull.add_argument("--graph", required=True,
                        help=f"{' | '.join(sorted(BUILTIN_GRAPHS))} | file:<path>")
    p_pull.add_argument("--k", type=_exponents_arg, default=(), metavar="K1,K2,...",
                        help="psi exponents of the new marked points (default: none)")
    p_pull.add_argument("--json", action="store_true", help="emit a JSON record")

    p_l2 = sub.add_parser("lambda2", help="genus-2 Hodge-class integral")
    p_l2.add_argument("--k", type=_exponents_arg, required=True, metavar="K1,K2,...")
    p_l2.add_argument("--method", choices=("closed", "eq5", "eq3"), default="closed")
    p_l2.add_argument("--json", action="store_true", help="emit a JSON record")

    p_ver = sub.add_parser("verify", help="cross-check all computation routes")
    p_ver.add_argument("--n-max", type=_positive_int, default=10)
    p_ver.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_ver.add_argument("--hard", action="store_true",
                       help=f"allow --n-max beyond {SOFT_N_MAX} despite the 2^n cost")
    return parser


def _emit(record: OutputRecord, value_text: str, as_json: bool) -> None:
    print(record.to_json() if as_json else value_text)


def _cmd_psi(args: argparse.Namespace) -> int:
    space = ModuliIndex(args.genus, len(args.k))
    value = format_rational(psi_integral(space, args.k))
    record = OutputRecord(
        command="psi",
        inputs={"genus": args.genus, "k": list(args.k)},
        results=[{"method": "string-dilaton", "value": value}],
    )
    _emit(record, value, args.json)
    return EXIT_OK


def _resolve_graph(name: str):
    if name in BUILTIN_GRAPHS:
        return builtin_graph(name)
    if name.startswith("file:"):
        path = name.removeprefix("file:")
        with open(path, encoding="utf-8") as handle:
            return parse_graph(handle.read())
    return None


def _cmd_pullback(args: argparse.Namespace) -> int:
    graph = _resolve_graph(args.graph)
    if graph is None:
        print(
            f"unknown graph {args.graph!r}; use one of "
            f"{', '.join(sorted(BUILTIN_GRAPHS))} or file:<path>",
            file=sys.stderr,
        )
        return EXIT_USAGE
    value = format_rational(pullback_integral(graph, args.k))
    record = OutputRecord(
        command="pullback",
        inputs={"graph": args.graph, "k": list(args.k)},
        results=[{"method": "strata-sum", "value": value}],
    )
    _emit(record, value, args.json)
    return EXIT_OK


def _cmd_lambda2(args: argparse.Namespace) -> int:
    n = len(args.k)
    if args.method == "closed":
        result = lambda2_closed(n, args.k)
    else:
        result = lambda2_integral(n, args.k, args.method)
    value = format_rational(result)
    record = OutputRecord(
        command="lambda2",
        inputs={"k": list(args.k), "method": args.method},
        results=[{"method": args.method, "value": value}],
    )
    _emit(record, value, args.json)
    return EXIT_OK


def _partition_text(partition: tuple[int, ...]) -> str:
    return "+".join(str(part) for part in partition)


def _verify_rows(reports) -> list[list[str]]:
    rows = []
    for report in reports:
        row = [str(report.n), _partition_text(report.partition)]
        row.extend(format_rational(report.values[m]) for m in VERIFY_METHODS)
        row.append("true" if report.agreed else "false")
        rows.append(row)
    return rows


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n_max > SOFT_N_MAX:
        if not args.hard:
            print(
                f"--n-max {args.n_max} enumerates up to 2^{args.n_max} strata per "
                f"partition; pass --hard to confirm",
                file=sys.stderr,
            )
            return EXIT_USAGE
        print(
            f"warning: --n-max {args.n_max} enumerates up to 2^{args.n_max} strata "
            f"per partition; this may take a while",
            file=sys.stderr,
        )

    reports = list(verify(args.n_max))
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(_verify_rows(reports))
    elif args.format == "json":
        records = [
            OutputRecord(
                command="verify",
                inputs={"n": report.n, "partition": list(report.partition)},
                results=[
                    {"method": m, "value": format_rational(report.values[m])}
                    for m in VERIFY_METHODS
                ],
                agree=report.agreed,
            ).to_dict()
            for report in reports
        ]
        print(json.dumps(records, indent=2))
    else:
        rows = _verify_rows(reports)
        header = list(CSV_COLUMNS[:-1]) + ["status"]
        display = [row[:-1] + ["AGREE" if row[-1] == "true" else "DISAGREE"] for row in rows]
        widths = [max(len(header[i]), *(len(row[i]) for row in display)) for i in range(len(header))]
        print("  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip())
        for row in display:
            print("  ".join(row[i].ljust(widths[i]) for i in range(len(header))).rstrip())
        disagreements = sum(not report.agreed for report in reports)
        if disagreements:
            print(f"{len(reports)} partitions checked, {disagreements} DISAGREE")
        else:
            print(f"{len(reports)} partitions checked, all routes agree")

    return EXIT_OK if all(report.agreed for report in reports) else EXIT_DISAGREE


_HANDLERS = {
    "psi": _cmd_psi,
    "pullback": _cmd_pullback,
    "lambda2": _cmd_lambda2,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return _HANDLERS[args.command](args)
    except InvalidGraphError as exc:
        print(f"invalid graph:\n{exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (GraphParseError, OSError) as exc:
        print(f"cannot load graph: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
