"""Command-line front end.

Four subcommands: ``compute`` runs the pipeline on one presentation at
one prime, ``table`` regenerates the h1/h2 grids over the corpus,
``simplify`` applies a substitution map and tidies the relators, and
``oracle-check`` compares pipeline answers against the bar-resolution
oracle.  Exit codes: 0 success, 1 usage or failed check, 2 parse or
validation error, 3 oracle unavailable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import oracle
from .hopf import (
    ORDER_CAP,
    BoundKind,
    HopfResult,
    _build_machine,
    _finish,
    image_matrix,
    run_pipeline,
    to_json,
)
from .presentation import (
    ParseError,
    Presentation,
    apply_substitution,
    corpus,
    corpus_names,
    parse_presentation,
    parse_substitution,
    render_presentation,
    render_word,
    simplify,
)
from .rewrite import DEFAULT_BUDGET, Budget, dump_rules

FORMATS = ("text", "json", "csv", "markdown")
DEFAULT_PRIMES = (2, 3, 5, 7)


class UsageError(Exception):
    """Bad flag combination; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; the contract reserves 2 for
    # parse errors, so route through exit code 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_source_flags(sp):
    sp.add_argument("--pres", metavar="FILE", help="presentation file")
    sp.add_argument(
        "--corpus", metavar="NAME", help="built-in corpus entry (see table --help)"
    )


def _add_budget_flags(sp):
    sp.add_argument("--budget-rules", type=int, metavar="N", default=None)
    sp.add_argument("--budget-len", type=int, metavar="N", default=None)
    sp.add_argument("--budget-steps", type=int, metavar="N", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfcalc", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[], help="one presentation, one prime")
    _add_source_flags(c)
    c.add_argument("--prime", type=int, required=True)
    c.add_argument(
        "--generators", action="store_true", help="also list candidate words"
    )
    c.add_argument("--format", choices=FORMATS, default="text")
    _add_budget_flags(c)
    c.add_argument("--dump-matrix", metavar="FILE", default=None)
    c.add_argument("--dump-rules", metavar="FILE", default=None)
    c.set_defaults(func=cmd_compute)

    t = sub.add_parser("table", help="h1/h2 grids over corpus entries")
    t.add_argument(
        "--corpus",
        metavar="NAMES",
        default=None,
        help="comma-separated corpus entries (default: all)",
    )
    t.add_argument("--primes", metavar="P1,P2,...", default=None)
    t.add_argument("--format", choices=FORMATS, default="markdown")
    _add_budget_flags(t)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("simplify", help="substitute generators and tidy relators")
    _add_source_flags(s)
    s.add_argument("--map", metavar="FILE", default=None, help="substitution map file")
    s.add_argument("--format", choices=FORMATS, default="text")
    s.set_defaults(func=cmd_simplify)

    o = sub.add_parser("oracle-check", help="compare pipeline against the oracle")
    _add_source_flags(o)
    o.add_argument("--prime", type=int, default=None)
    o.add_argument("--primes", metavar="P1,P2,...", default=None)
    o.add_argument("--max-order", type=int, default=oracle.DEFAULT_CAP)
    o.add_argument("--format", choices=FORMATS, default="text")
    _add_budget_flags(o)
    o.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse handles --help and usage failures by exiting; fold
        # that into the return-code contract instead of letting it
        # propagate past callers that invoke main() directly
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hopfcalc: error: {e}", file=sys.stderr)
        return 1
    except ParseError as e:
        print(f"hopfcalc: parse error: {e}", file=sys.stderr)
        return 2
    except oracle.OracleUnavailable as e:
        print(f"hopfcalc: oracle unavailable: {e}", file=sys.stderr)
        return 3
    except KeyError as e:
        print(f"hopfcalc: error: {e.args[0] if e.args else e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"hopfcalc: error: {e}", file=sys.stderr)
        return 2


# ---------------------------------------------------------------------------
# shared plumbing


def _load_presentation(args) -> Presentation:
    if bool(args.pres) == bool(args.corpus):
        raise UsageError("exactly one of --pres or --corpus is required")
    if args.pres:
        path = Path(args.pres)
        return parse_presentation(path.read_text("utf-8"), name=path.stem)
    return corpus(args.corpus)


def _budget(args) -> Budget:
    return Budget(
        max_rules=args.budget_rules or DEFAULT_BUDGET.max_rules,
        max_rule_length=args.budget_len or DEFAULT_BUDGET.max_rule_length,
        max_steps=args.budget_steps or DEFAULT_BUDGET.max_steps,
    )


def _parse_primes(args) -> list[int]:
    out: list[int] = []
    if getattr(args, "prime", None) is not None:
        out.append(args.prime)
    raw = getattr(args, "primes", None)
    if raw is not None:
        toks = [t.strip() for t in raw.split(",") if t.strip()]
        if not toks:
            raise UsageError("empty prime list")
        for t in toks:
            try:
                out.append(int(t))
            except ValueError:
                raise ValueError(f"bad prime {t!r}") from None
    if not out:
        out = list(DEFAULT_PRIMES)
    return out


def _thread_count(n_jobs: int) -> int:
    raw = os.environ.get("HOPFCALC_THREADS", "").strip()
    if raw:
        try:
            k = int(raw)
        except ValueError:
            raise UsageError(f"HOPFCALC_THREADS must be an integer, got {raw!r}") from None
        if k < 1:
            raise UsageError("HOPFCALC_THREADS must be at least 1")
    else:
        k = os.cpu_count() or 1
    return max(1, min(k, n_jobs))


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _bounded(value: int, kind: BoundKind) -> str:
    return str(value) if kind is BoundKind.EXACT else f"≤{value}"


# ---------------------------------------------------------------------------
# compute


def cmd_compute(args) -> int:
    pres = _load_presentation(args)
    budget = _budget(args)
    machine = _build_machine(pres, args.prime, budget, ORDER_CAP)
    result = _finish(pres, args.prime, machine, budget)
    if args.dump_rules:
        Path(args.dump_rules).write_text(
            dump_rules(machine.base, pres.generators), encoding="utf-8"
        )
    if args.dump_matrix:
        mat = image_matrix(result.spanning_set, pres.arity, args.prime)
        lines = [f"# rows: {mat.shape[0]}  cols: {mat.shape[1]}  prime: {args.prime}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in mat)
        Path(args.dump_matrix).write_text("\n".join(lines) + "\n", encoding="utf-8")
    _emit(_render_compute(result, args.format, args.generators))
    return 0


def _render_compute(r: HopfResult, fmt: str, with_candidates: bool) -> str:
    if fmt == "json":
        return json.dumps(to_json(r), indent=2, ensure_ascii=False) + "\n"
    scalars = [
        ("group", r.group or ""),
        ("prime", r.prime),
        ("n_generators", r.n_generators),
        ("h1_dim", r.h1_dim),
        ("dim_A", r.dim_a),
        ("dim_A_kind", r.dim_a_kind.value),
        ("rank_image", r.rank_image),
        ("h2_value", r.h2_value),
        ("h2_kind", r.h2_kind.value),
        ("confluent_base", r.confluent_base),
        ("confluent_cover", r.confluent_cover),
    ]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([k for k, _ in scalars])
        w.writerow([v for _, v in scalars])
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| field | value |", "|---|---|"]
        lines.extend(f"| {k} | {v} |" for k, v in scalars)
        return "\n".join(lines) + "\n"
    exact = r.h2_kind is BoundKind.EXACT
    h2 = f"h2 = {r.h2_value} (exact)" if exact else f"h2 ≤ {r.h2_value}"
    da = (
        f"dim A = {r.dim_a} (exact)"
        if r.dim_a_kind is BoundKind.EXACT
        else f"dim A ≤ {r.dim_a}"
    )
    lines = [
        f"h1 = {r.h1_dim}, {h2}",
        f"{da}, image rank = {r.rank_image}",
    ]
    if with_candidates:
        lines.append(f"candidates ({len(r.candidates)}):")
        for coeffs, word in r.candidates:
            rendered = render_word(word, r.generators)
            lines.append(f"  {rendered}  coeffs={','.join(map(str, coeffs))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# table


def cmd_table(args) -> int:
    if args.corpus:
        names = [t.strip() for t in args.corpus.split(",") if t.strip()]
        if not names:
            raise UsageError("empty corpus list")
    else:
        names = list(corpus_names())
    primes = _parse_primes(args)
    budget = _budget(args)
    jobs = [(name, p) for name in names for p in primes]
    loaded = {name: corpus(name) for name in names}
    results: dict[tuple[str, int], HopfResult] = {}
    with ThreadPoolExecutor(max_workers=_thread_count(len(jobs))) as pool:
        futures = {
            pool.submit(run_pipeline, loaded[name], p, budget): (name, p)
            for name, p in jobs
        }
        for fut, key in futures.items():
            results[key] = fut.result()
    _emit(_render_table(names, primes, results, args.format))
    return 0


def _render_table(names, primes, results, fmt: str) -> str:
    if fmt == "json":
        records = [
            {
                "group": name,
                "prime": p,
                "h1_dim": results[name, p].h1_dim,
                "h2_value": results[name, p].h2_value,
                "h2_kind": results[name, p].h2_kind.value,
            }
            for name in names
            for p in primes
        ]
        return json.dumps(records, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["group", "prime", "h1", "h2", "h2_kind"])
        for name in names:
            for p in primes:
                r = results[name, p]
                w.writerow([name, p, r.h1_dim, r.h2_value, r.h2_kind.value])
        return buf.getvalue()
    header = ["group"] + [f"p={p}" for p in primes]
    h1_rows = [
        [name] + [str(results[name, p].h1_dim) for p in primes] for name in names
    ]
    h2_rows = [
        [name]
        + [_bounded(results[name, p].h2_value, results[name, p].h2_kind) for p in primes]
        for name in names
    ]
    if fmt == "markdown":
        out = ["## h1", ""]
        out.extend(_md_table(header, h1_rows))
        out.extend(["", "## h2", ""])
        out.extend(_md_table(header, h2_rows))
        return "\n".join(out) + "\n"
    out = ["h1"]
    out.extend(_aligned(header, h1_rows))
    out.append("h2")
    out.extend(_aligned(header, h2_rows))
    return "\n".join(out) + "\n"


def _md_table(header, rows) -> list[str]:
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("|" + "|".join("---" for _ in header) + "|")
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return lines


def _aligned(header, rows) -> list[str]:
    table = [header] + rows
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    out = []
    for r in table:
        cells = [r[0].ljust(widths[0])] + [
            r[i].rjust(widths[i]) for i in range(1, len(r))
        ]
        out.append("  ".join(cells).rstrip())
    return out


# ---------------------------------------------------------------------------
# simplify


def cmd_simplify(args) -> int:
    pres = _load_presentation(args)
    if args.map:
        m = parse_substitution(Path(args.map).read_text("utf-8"))
        pres = apply_substitution(pres, m)
    out = simplify(pres)
    if args.format == "json":
        record = {
            "generators": list(out.generators),
            "relators": [render_word(r, out.generators) for r in out.relators],
        }
        _emit(json.dumps(record, indent=2, ensure_ascii=False) + "\n")
    else:
        _emit(render_presentation(out))
    return 0


# ---------------------------------------------------------------------------
# oracle-check


def cmd_oracle_check(args) -> int:
    pres = _load_presentation(args)
    primes = _parse_primes(args)
    budget = _budget(args)
    reports = [oracle.check(pres, p, budget, cap=args.max_order) for p in primes]
    if args.format == "json":
        _emit(json.dumps(reports, indent=2, ensure_ascii=False) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        keys = list(reports[0].keys())
        w.writerow(keys)
        for rep in reports:
            w.writerow([rep[k] for k in keys])
        _emit(buf.getvalue())
    else:
        lines = []
        for rep in reports:
            kind = "=" if rep["pipeline_kind"] == "exact" else "≤"
            lines.append(
                f"{rep['group'] or '?'} p={rep['prime']}: "
                f"pipeline h1={rep['pipeline_h1']} h2{kind}{rep['pipeline_h2']}  "
                f"oracle h1={rep['oracle_h1']} h2={rep['oracle_h2']}  "
                f"{rep['verdict']}"
            )
        _emit("\n".join(lines) + "\n")
    return 0 if all(rep["verdict"] == "pass" for rep in reports) else 1
