"""su3cohom command line: tables, gluing counts, verification and stabilizers.

Exit codes: 0 success, 1 a negative answer (no gluing, failed check), 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
import sys

import click

from . import classify, geomverify, reps
from .errors import DescriptorParseError, IncompatibleRegime, Su3CohomError
from .liealg import Tolerances

FORMATS = ("markdown", "csv", "json")

_TUBE_RE = re.compile(
    r"^(?:(?P<bare>S|L|Lquot3)|(?P<kind>P|F|Squot)\((?P<args>[^()]*)\))$"
)
_ARITY = {"P": 1, "F": 2, "Squot": 1}


def parse_tube(text: str) -> classify.Tube:
    """Parse ``S | L | P(m) | F(p,q) | Squot(h) | Lquot3``."""
    compact = re.sub(r"\s+", "", text)
    m = _TUBE_RE.match(compact)
    if not m:
        head = re.match(r"[A-Za-z0-9_]*", compact).group(0) or compact[:1]
        raise DescriptorParseError(text, head or text)
    if m.group("bare"):
        return {"S": classify.S, "L": classify.L, "Lquot3": classify.LQUOT3}[m.group("bare")]
    kind = m.group("kind")
    raw = m.group("args").split(",") if m.group("args") else []
    if len(raw) != _ARITY[kind]:
        raise DescriptorParseError(text, m.group("args") or "()")
    args = []
    for tok in raw:
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise DescriptorParseError(text, tok)
        args.append(int(tok))
    try:
        return classify.Tube(kind, tuple(args))
    except (ValueError, Su3CohomError) as exc:
        raise DescriptorParseError(text, m.group("args")) from exc


def parse_slice(tokens: tuple[str, ...]) -> reps.SliceRep:
    """Parse ``SU2 | SO3 | U2 m | T2 p q`` given as separate words."""
    words = " ".join(tokens).split()
    if not words:
        raise DescriptorParseError("", "")
    head, rest = words[0], words[1:]
    arity = {"SU2": 0, "SO3": 0, "U2": 1, "T2": 2}
    if head not in arity:
        raise DescriptorParseError(" ".join(words), head)
    if len(rest) != arity[head]:
        raise DescriptorParseError(" ".join(words), " ".join(rest) or head)
    for tok in rest:
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise DescriptorParseError(" ".join(words), tok)
    args = [int(t) for t in rest]
    try:
        if head == "SU2":
            return reps.SU2Standard()
        if head == "SO3":
            return reps.SO3Standard()
        if head == "U2":
            return reps.U2Rep(args[0])
        return reps.TorusRep(*args)
    except (ValueError, Su3CohomError) as exc:
        raise DescriptorParseError(" ".join(words), " ".join(rest)) from exc


# -- rendering -------------------------------------------------------------------


def _markdown_table(corner: str, cols: list[str], rows: list[str], cells: list[list]) -> str:
    lines = ["| " + " | ".join([corner] + cols) + " |", "|" + "---|" * (len(cols) + 1)]
    for label, row in zip(rows, cells):
        lines.append("| " + " | ".join([label] + [str(c) for c in row]) + " |")
    return "\n".join(lines)


def render_tables(tables: list[classify.Table], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([t.to_dict() for t in tables], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for t in tables:
            buf.write(f"# {t.table_id}\n")
            writer.writerow([t.corner] + t.col_labels)
            for label, row in zip(t.row_labels, t.cells):
                writer.writerow([label] + row)
        return buf.getvalue().rstrip("\n")
    blocks = []
    for t in tables:
        block = [f"### {t.table_id}: {t.caption}", ""]
        if t.row_labels and t.col_labels:
            block.append(_markdown_table(t.corner, t.col_labels, t.row_labels, t.cells))
        else:
            block.append("(empty at this bound)")
        for ex in t.named_examples:
            block.append(f"- ({ex['row']}, {ex['col']}): {ex['name']}")
        blocks.append("\n".join(block))
    return "\n\n".join(blocks)


def render_reports(reports: list[geomverify.VerificationReport], fmt: str, seed: int | None) -> str:
    if fmt == "json":
        payload = {"reports": [r.to_dict() for r in reports], "all_passed": all(r.passed for r in reports)}
        if seed is not None:
            payload["seed"] = seed
        return json.dumps(payload, indent=2)
    rows = [
        [r.check_name, r.samples, "inf" if not math.isfinite(r.max_deviation) else f"{r.max_deviation:.3e}",
         "pass" if r.passed else "FAIL"]
        for r in reports
    ]
    head = ["check_name", "samples", "max_deviation", "passed"]
    if fmt == "csv":
        buf = io.StringIO()
        if seed is not None:
            buf.write(f"# seed {seed}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(head)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    out = [] if seed is None else [f"seed: {seed}", ""]
    out.append(_markdown_table(head[0], head[1:], [r[0] for r in rows], [r[1:] for r in rows]))
    return "\n".join(out)


# -- commands ----------------------------------------------------------------------


def _format_option(f):
    return click.option(
        "--output-format", "fmt", type=click.Choice(FORMATS), default="markdown",
        envvar="SU3COHOM_FORMAT", show_default=True,
    )(f)


def _tol_options(f):
    f = click.option("--tol-rank", type=float, default=1e-7, envvar="SU3COHOM_TOL_RANK", show_default=True)(f)
    f = click.option("--tol-mat", type=float, default=1e-9, envvar="SU3COHOM_TOL_MAT", show_default=True)(f)
    return f


def _tolerances(tol_mat: float, tol_rank: float) -> Tolerances:
    try:
        return Tolerances(tol_mat, tol_rank)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _fail_parse(exc: DescriptorParseError):
    click.echo(f"error: {exc}", err=True)
    sys.exit(2)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Cohomogeneity-one SU(3) actions: classification tables and numerical checks."""


@main.command()
@click.option("--bound", type=click.IntRange(min=1), default=5, show_default=True)
@_format_option
def tables(bound: int, fmt: str):
    """Print the slice table and the three gluing tables."""
    click.echo(render_tables(classify.emit_tables(bound), fmt))


@main.command("classify")
@click.argument("tube1")
@click.argument("tube2")
@_format_option
def classify_cmd(tube1: str, tube2: str, fmt: str):
    """Count SU(3)-diffeomorphism classes glued from two tubes."""
    try:
        t1, t2 = parse_tube(tube1), parse_tube(tube2)
    except DescriptorParseError as exc:
        _fail_parse(exc)
    try:
        g = classify.count_diffeo_classes(t1, t2)
    except IncompatibleRegime as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        click.echo(json.dumps({"tube1": t1.label, "tube2": t2.label, "count": g.count, "reason": g.reason.value}))
    elif fmt == "csv":
        click.echo(f"tube1,tube2,count,reason\n{t1.label},{t2.label},{g.count},{g.reason.value}")
    else:
        click.echo(f"{t1.label} + {t2.label}: count {g.count} ({g.reason.value})")
    sys.exit(0 if g.count > 0 else 1)


@main.command()
@click.argument("which", type=click.Choice(["consim", "grassmann", "torus-lemma", "all"]))
@click.option("--seed", type=int, default=42, envvar="SU3COHOM_SEED", show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--bound", type=click.IntRange(min=1), default=5, show_default=True)
@_tol_options
@_format_option
def verify(which: str, seed: int, samples: int, bound: int, tol_mat: float, tol_rank: float, fmt: str):
    """Run numerical verification checks; exit 1 if any fails."""
    tol = _tolerances(tol_mat, tol_rank)
    reports = []
    randomized = which in ("consim", "grassmann", "all")
    if which in ("consim", "all"):
        reports += geomverify.consim_checks(seed, samples, tol)
    if which in ("grassmann", "all"):
        reports += geomverify.grassmann_checks(seed, samples, tol)
    if which in ("torus-lemma", "all"):
        reports += geomverify.torus_lemma_checks(bound)
    click.echo(render_reports(reports, fmt, seed if randomized else None))
    for r in reports:
        if not r.passed:
            click.echo(f"failed: {r.check_name}", err=True)
    sys.exit(0 if all(r.passed for r in reports) else 1)


@main.command()
@click.argument("descriptor", nargs=-1, required=True)
@_format_option
def stabilizer(descriptor: tuple[str, ...], fmt: str):
    """Principal stabilizer of a slice: SU2 | SO3 | U2 m | T2 p q."""
    try:
        rep = parse_slice(descriptor)
    except DescriptorParseError as exc:
        _fail_parse(exc)
    ps = reps.principal_stabilizer(rep)
    c = ps.circle
    record = {
        "slice": rep.label,
        "circle": [c.k, c.l],
        "triple": list(c.triple),
        "type": c.kind.value,
        "h": ps.finite_part,
    }
    if fmt == "json":
        click.echo(json.dumps(record))
    elif fmt == "csv":
        click.echo("slice,k,l,type,h\n" + f"{rep.label},{c.k},{c.l},{c.kind.value},{ps.finite_part}")
    else:
        click.echo(f"{rep.label}: {c} triple {c.triple} {c.kind.value} h={ps.finite_part}")


if __name__ == "__main__":
    main()
