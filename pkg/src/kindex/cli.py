"""Command-line front end.

Commands: validate, metrics, rank, correlate, yearly. Exit codes: 0 on
success, 1 on validation failure, 2 on usage errors (bad flags, missing
files, unknown columns). Output is deterministic: identical inputs and
flags produce byte-identical output.
"""

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP

from .analytics import (
    RANK_KEYS,
    UndefinedCorrelationError,
    linear_trend,
    pearson,
    rank_authors,
    yearly_summary,
)
from .filtering import FilterConfig
from .indices import AuthorMetrics, EmptyPortfolioError, compute_author_metrics, metrics_from_summary
from .ingest import (
    AuthorSummaryRow,
    Config,
    ConfigError,
    ParseError,
    load_config,
    parse_author_summaries,
    parse_publications,
)
from .model import Role

FORMATS = ("table", "csv", "plotdata")

_CORRELATE_COLUMNS = {
    "h": lambda r: r.h_index,
    "doc": lambda r: r.doc,
    "cit": lambda r: r.cit,
    "fa": lambda r: r.shares.get(Role.FA),
    "la": lambda r: r.shares.get(Role.LA),
    "coa": lambda r: r.shares.get(Role.COA),
    "cora": lambda r: r.shares.get(Role.CORA),
    "sa": lambda r: r.shares.get(Role.SA),
    "fwci1": lambda r: r.role_fwci.get(Role.FA),
    "fwci2": lambda r: r.role_fwci.get(Role.LA),
    "fwci3": lambda r: r.role_fwci.get(Role.COA),
    "fwci4": lambda r: r.role_fwci.get(Role.CORA),
    "fwci5": lambda r: r.role_fwci.get(Role.SA),
}

_METRIC_COLUMNS = (
    "author", "name", "doc", "cit", "cit_per_doc", "h_index", "k_r",
    "fwci_total", "k_exact", "k_display", "k_p", "k_c", "k_integrated",
)


@dataclass
class CommandOutcome:
    """Exit code plus the diagnostics that justify it (empty on success)."""

    exit_code: int = 0
    diagnostics: list[str] = field(default_factory=list)


class _Fail(Exception):
    def __init__(self, exit_code: int, messages: list[str]):
        self.outcome = CommandOutcome(exit_code, messages)
        super().__init__("; ".join(messages))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _Fail(2, [f"cannot read {path}: {exc.strerror or exc}"]) from None


def fmt_value(value, precision: int) -> str:
    """Render one cell: '-' for absent, plain integers, and floats rounded
    half-away-from-zero at the given number of decimal places."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    quantum = Decimal(1).scaleb(-precision)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _render_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _render_plotdata(series: list[tuple[str, str, str]]) -> str:
    lines = ["series\tx\ty"]
    lines.extend(f"{name}\t{x}\t{y}" for name, x, y in series)
    return "\n".join(lines) + "\n"


def _render(kind: str, header: list[str], rows: list[list[str]]) -> str:
    return _render_csv(header, rows) if kind == "csv" else _render_table(header, rows)


def _load_settings(args) -> tuple[Config, int]:
    config = Config()
    if args.config:
        try:
            config = load_config(_read(args.config))
        except ConfigError as exc:
            raise _Fail(1, [str(exc)]) from None
    precision = args.precision if args.precision is not None else config.precision
    return config, precision


def _parse_corpus(path: str):
    try:
        return parse_publications(_read(path))
    except ParseError as exc:
        raise _Fail(1, [str(issue) for issue in exc.issues]) from None


def _parse_summary(path: str) -> list[AuthorSummaryRow]:
    try:
        return parse_author_summaries(_read(path))
    except ParseError as exc:
        raise _Fail(1, [str(issue) for issue in exc.issues]) from None


def _collect_metrics(args, filters: FilterConfig) -> list[AuthorMetrics]:
    if args.summary:
        rows = _parse_summary(args.summary)
        try:
            metrics = [metrics_from_summary(row) for row in rows]
        except EmptyPortfolioError as exc:
            raise _Fail(1, [str(exc)]) from None
    else:
        bundle = _parse_corpus(args.corpus)
        authors = sorted({a for p in bundle.publications for a in p.authors})
        metrics = [compute_author_metrics(a, bundle, filters) for a in authors]
    if getattr(args, "author", None):
        metrics = [m for m in metrics if m.author == args.author]
        if not metrics:
            raise _Fail(1, [f"unknown author {args.author!r}"])
    return metrics


def _metric_row(m: AuthorMetrics, precision: int) -> list[str]:
    return [
        m.author,
        m.display_name,
        fmt_value(m.doc, precision),
        fmt_value(m.cit, precision),
        fmt_value(m.cit_per_doc, precision),
        fmt_value(m.h_index, precision),
        fmt_value(m.k_r, precision),
        fmt_value(m.fwci_total, precision),
        fmt_value(m.k_exact, precision),
        fmt_value(m.k_display, precision),
        fmt_value(m.k_p, precision),
        fmt_value(m.k_c, precision),
        fmt_value(m.k_integrated, precision),
    ]


def cmd_validate(args) -> tuple[CommandOutcome, str]:
    bundle = _parse_corpus(args.corpus)
    return CommandOutcome(), (
        f"ok: {len(bundle.publications)} publications, "
        f"{len(bundle.citations)} citations\n"
    )


def cmd_metrics(args) -> tuple[CommandOutcome, str]:
    config, precision = _load_settings(args)
    if args.format == "plotdata":
        raise _Fail(2, ["metrics does not support --format plotdata"])
    metrics = _collect_metrics(args, config.filters)
    rows = [_metric_row(m, precision) for m in metrics]
    return CommandOutcome(), _render(args.format, list(_METRIC_COLUMNS), rows)


def cmd_rank(args) -> tuple[CommandOutcome, str]:
    config, precision = _load_settings(args)
    metrics = _collect_metrics(args, config.filters)
    table = rank_authors(metrics, args.key)
    if args.format == "plotdata":
        series = [
            (args.key, str(rank), fmt_value(getattr(m, args.key), precision))
            for rank, m in table.rows
        ]
        return CommandOutcome(), _render_plotdata(series)
    header = ["rank", "author", "name", args.key]
    if args.key != "cit_per_doc":
        header.append("cit_per_doc")
    rows = []
    for rank, m in table.rows:
        row = [str(rank), m.author, m.display_name,
               fmt_value(getattr(m, args.key), precision)]
        if args.key != "cit_per_doc":
            row.append(fmt_value(m.cit_per_doc, precision))
        rows.append(row)
    return CommandOutcome(), _render(args.format, header, rows)


def cmd_correlate(args) -> tuple[CommandOutcome, str]:
    _, precision = _load_settings(args)
    rows = _parse_summary(args.summary)
    extractors = {}
    for axis, name in (("x", args.x), ("y", args.y)):
        key = name.strip().lower()
        if key not in _CORRELATE_COLUMNS:
            raise _Fail(2, [f"unknown column {name!r} for --{axis}"])
        extractors[axis] = _CORRELATE_COLUMNS[key]
    pairs = []
    for row in rows:
        x_val = extractors["x"](row)
        y_val = extractors["y"](row)
        if x_val is not None and y_val is not None:
            pairs.append((float(x_val), float(y_val)))
    if len(pairs) < 2:
        raise _Fail(1, ["undefined correlation: fewer than two complete pairs"])
    xs = [p[0] for p in pairs]
    ys = [p[1] for p in pairs]
    try:
        r = pearson(xs, ys)
    except UndefinedCorrelationError as exc:
        raise _Fail(1, [f"undefined correlation: {exc}"]) from None

    if args.format == "plotdata":
        slope, intercept = linear_trend(pairs)
        series = [
            ("points", fmt_value(x, precision), fmt_value(y, precision))
            for x, y in pairs
        ]
        series.extend(
            ("trend", fmt_value(x, precision),
             fmt_value(slope * x + intercept, precision))
            for x in sorted(set(xs))
        )
        return CommandOutcome(), _render_plotdata(series)
    header = ["x", "y", "n", "r"]
    row = [args.x, args.y, str(len(pairs)), fmt_value(r, max(precision, 4))]
    return CommandOutcome(), _render(args.format, header, [row])


def cmd_yearly(args) -> tuple[CommandOutcome, str]:
    _, precision = _load_settings(args)
    bundle = _parse_corpus(args.corpus)
    summary = yearly_summary(bundle)
    header = ["year", "doc", "cited_doc", "cit", "self_cit", "cit_per_doc"]
    if args.format == "plotdata":
        series = []
        for column in header[1:]:
            for row in summary:
                series.append(
                    (column, str(row.year),
                     fmt_value(getattr(row, column), precision))
                )
        return CommandOutcome(), _render_plotdata(series)
    rows = [
        [str(r.year), str(r.doc), str(r.cited_doc), str(r.cit),
         str(r.self_cit), fmt_value(r.cit_per_doc, precision)]
        for r in summary
    ]
    return CommandOutcome(), _render(args.format, header, rows)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to a key=value config file")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument(
        "--precision", type=int, default=None,
        help="decimal places for table values (default from config, else 2)",
    )
    parser.add_argument(
        "--format", choices=FORMATS, default="table",
        help="output format (default: table)",
    )


def _add_input_group(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--corpus", help="corpus file of pub/cite records")
    group.add_argument("--summary", help="author summary table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kindex",
        description="Scientometric indicators for publication corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse and integrity-check a corpus")
    p_validate.add_argument("corpus", help="corpus file")
    _add_common_flags(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_metrics = sub.add_parser("metrics", help="per-author indicator rows")
    _add_input_group(p_metrics)
    p_metrics.add_argument("--author", help="only this author id")
    _add_common_flags(p_metrics)
    p_metrics.set_defaults(func=cmd_metrics)

    p_rank = sub.add_parser("rank", help="rank authors by one metric")
    _add_input_group(p_rank)
    p_rank.add_argument("--key", choices=RANK_KEYS, default="k_display")
    _add_common_flags(p_rank)
    p_rank.set_defaults(func=cmd_rank)

    p_corr = sub.add_parser("correlate", help="correlation between summary columns")
    p_corr.add_argument("summary", help="author summary table")
    p_corr.add_argument("--x", required=True, help="first column name")
    p_corr.add_argument("--y", required=True, help="second column name")
    _add_common_flags(p_corr)
    p_corr.set_defaults(func=cmd_correlate)

    p_yearly = sub.add_parser("yearly", help="per-year corpus activity")
    p_yearly.add_argument("corpus", help="corpus file")
    _add_common_flags(p_yearly)
    p_yearly.set_defaults(func=cmd_yearly)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        outcome, output = args.func(args)
    except _Fail as exc:
        outcome, output = exc.outcome, ""
    for message in outcome.diagnostics:
        print(message, file=sys.stderr)
    if output:
        if args.out:
            try:
                with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
                    handle.write(output)
            except OSError as exc:
                print(f"cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
                return 2
        else:
            sys.stdout.write(output)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
