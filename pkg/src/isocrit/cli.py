"""Command-line interface.

Graph arguments are inline graph6, ``@path`` for a file (edge list or
graph6), or ``-`` for standard input. Exit codes: 0 success, 1 malformed
input or bad usage, 2 criticality requested for a star, 3 when the two
(ι,1) tests disagree.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .criticality import (
    MethodDisagreement,
    StarError,
    check_tripartition,
    crit_index,
    crit_report,
    induced_tripartition,
    is_gamma1_critical,
    is_iota1_critical,
    subdivision_number,
)
from .enumeration import (
    DEFAULT_MAX_N,
    LARGE_MAX_N,
    WORKERS_ENV,
    free_trees,
    read_csv,
    survey,
    verify_open_problem,
)
from .families import (
    fiota_build,
    fiota_membership,
    make_cycle,
    make_path,
    make_qk,
    make_spider,
    make_star,
    make_wounded_spider,
)
from .formats import encode_graph6, format_edgelist, parse_graph_text
from .graph import Graph, GraphError, classify, is_star
from .isolation import enumerate_min_isolating_sets, gamma, iota

EXIT_BAD_INPUT = 1
EXIT_STAR = 2
EXIT_DISAGREE = 3


def load_graph(arg: str) -> Graph:
    if arg == "-":
        text = click.get_text_stream("stdin").read()
    elif arg.startswith("@"):
        try:
            text = Path(arg[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise GraphError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    else:
        text = arg
    return parse_graph_text(text)


def _bool(x: bool) -> str:
    return "true" if x else "false"


class _Cli(click.Group):
    """Group that maps failures onto the documented exit codes."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except StarError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_STAR)
        except MethodDisagreement as exc:
            click.echo(f"error: methods disagree: {exc}", err=True)
            sys.exit(EXIT_DISAGREE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_BAD_INPUT)
        except (GraphError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_BAD_INPUT)
        except click.Abort:
            click.echo("aborted", err=True)
            sys.exit(EXIT_BAD_INPUT)
        sys.exit(rv if isinstance(rv, int) else 0)


GRAPH = click.argument("graph", default="-")


@click.group(cls=_Cli, epilog=f"Environment: {WORKERS_ENV} sets the default worker count for `survey`.")
@click.version_option(package_name="artifact")
def cli() -> None:
    """Isolation number and subdivision criticality of graphs.

    GRAPH arguments take inline graph6, @FILE (edge list or graph6), or - for
    standard input (the default).
    """


@cli.command("iota")
@GRAPH
def iota_cmd(graph: str) -> None:
    """Print the isolation number."""
    click.echo(iota(load_graph(graph)))


def _star_exit(ctx: click.Context) -> None:
    click.echo("undefined (star)")
    ctx.exit(EXIT_STAR)


@cli.command()
@GRAPH
@click.pass_context
def sd(ctx: click.Context, graph: str) -> None:
    """Print the subdivision number (exit 2 for stars)."""
    value = subdivision_number(load_graph(graph))
    if value is None:
        _star_exit(ctx)
    click.echo(value)


@cli.command("crit-index")
@GRAPH
@click.option("--method", type=click.Choice(["auto", "tree", "brute"]), default="auto", show_default=True)
@click.pass_context
def crit_index_cmd(ctx: click.Context, graph: str, method: str) -> None:
    """Print q such that the graph is (iota,q)-critical (exit 2 for stars)."""
    value = crit_index(load_graph(graph), method)
    if value is None:
        _star_exit(ctx)
    click.echo(value)


@cli.command("check-crit1")
@GRAPH
@click.option(
    "--method",
    type=click.Choice(["structural", "brute", "both"]),
    default="both",
    show_default=True,
    help="'both' cross-validates and exits 3 on any disagreement.",
)
def check_crit1(graph: str, method: str) -> None:
    """Decide (iota,1)-criticality."""
    g = load_graph(graph)
    if is_star(g):
        raise StarError("criticality is undefined for stars")
    click.echo(_bool(is_iota1_critical(g, method).critical))


@cli.command()
@GRAPH
@click.option("--max-sets", type=click.IntRange(min=0), default=50, show_default=True,
              help="Cap on listed minimum isolating sets.")
@click.option("--gamma", "with_gamma", is_flag=True, help="Include the domination number and (gamma,1) test.")
def analyze(graph: str, max_sets: int, with_gamma: bool) -> None:
    """Print a JSON analysis document with sorted keys."""
    g = load_graph(graph)
    click.echo(json.dumps(analysis_document(g, max_sets, with_gamma), indent=2, sort_keys=True))


def analysis_document(g: Graph, max_sets: int = 50, with_gamma: bool = False) -> dict:
    structure = classify(g)
    family = enumerate_min_isolating_sets(g)
    doc: dict = {
        "input": {"graph6": encode_graph6(g), "n": g.n, "m": g.m},
        "structure": structure.as_dict(),
        "iota": family.size,
        "min_isolating_sets": {
            "count": len(family),
            "sets": [list(D) for D in family.sets[:max_sets]],
            "truncated": len(family) > max_sets,
        },
        "criticality": None,
        "tripartitions": None,
        "iota1_critical": None,
        "fiota": None,
    }
    if structure.connected and g.m:
        report = crit_report(g)
        doc["criticality"] = report.as_dict()
        if not report.is_star:
            verdicts = []
            for D in family:
                t = check_tripartition(g, *induced_tripartition(g, D))
                verdicts.append({"set": list(D), **t.as_dict()})
            doc["tripartitions"] = verdicts
            structural = all(v["pass"] for v in verdicts)
            if structural != (report.crit_q == 1):
                raise MethodDisagreement(f"tripartitions say {structural}, crit_q = {report.crit_q}")
            doc["iota1_critical"] = structural
            if structure.tree:
                mem = fiota_membership(g)
                doc["fiota"] = {
                    "member": mem.member,
                    "reason": mem.reason,
                    "steps": [{"op": s.op, "anchor": s.anchor, "new_vertices": list(s.new_vertices)} for s in mem.steps],
                }
    if with_gamma:
        doc["gamma"] = {
            "gamma": gamma(g),
            "gamma1_critical": is_gamma1_critical(g) if structure.connected else None,
        }
    return doc


_FAMILIES = {
    "path": (1, lambda a: make_path(*a)),
    "cycle": (1, lambda a: make_cycle(*a)),
    "star": (1, lambda a: make_star(*a)),
    "spider": (1, lambda a: make_spider(*a)),
    "wounded-spider": (2, lambda a: make_wounded_spider(*a)),
    "qk": (1, lambda a: make_qk(*a).graph),
}


@cli.command()
@click.argument("family", type=click.Choice(sorted([*_FAMILIES, "fiota"])))
@click.argument("params", nargs=-1)
@click.option("--graph6", "fmt", flag_value="graph6", default=True, help="Emit graph6 (default).")
@click.option("--edgelist", "fmt", flag_value="edgelist", help="Emit an edge list.")
def gen(family: str, params: tuple[str, ...], fmt: str) -> None:
    """Generate a family member.

    \b
    path N | cycle N | star K | spider T | wounded-spider T D | qk K
    fiota SCRIPT...   e.g. `fiota O3@leaf O1@1` (0-indexed anchors)
    """
    if family == "fiota":
        g = fiota_build(list(params)).tree
    else:
        arity, make = _FAMILIES[family]
        if len(params) != arity:
            raise click.UsageError(f"{family} takes {arity} integer parameter(s)")
        try:
            values = [int(p) for p in params]
        except ValueError:
            raise click.UsageError(f"{family} parameters must be integers") from None
        g = make(values)
    click.echo(encode_graph6(g) if fmt == "graph6" else format_edgelist(g).rstrip("\n"))


@cli.command("enum-trees")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--non-star", is_flag=True, help="Skip stars.")
def enum_trees(n: int, non_star: bool) -> None:
    """Stream every free tree of order N as graph6."""
    for t in free_trees(n):
        if non_star and is_star(t):
            continue
        click.echo(encode_graph6(t))


@cli.command("survey")
@click.option("--max-n", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help=f"Worker processes (default: ${WORKERS_ENV} or 1).")
@click.option("--allow-large", is_flag=True, help=f"Permit {DEFAULT_MAX_N} < max-n <= {LARGE_MAX_N}.")
def survey_cmd(max_n: int, out: str, workers: int | None, allow_large: bool) -> None:
    """Criticality index of every non-star tree with 5..MAX_N vertices, as CSV."""
    records = survey(max_n, out, workers=workers, allow_large=allow_large)
    click.echo(f"{len(records)} rows written to {out}", err=True)


@cli.command("gap-report")
@click.option("--max-n", type=int, required=True)
@click.option("--from", "source", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Read survey rows from CSV instead of recomputing.")
@click.option("--text", "as_text", is_flag=True, help="One line per order instead of JSON.")
@click.option("--allow-large", is_flag=True)
def gap_report(max_n: int, source: str | None, as_text: bool, allow_large: bool) -> None:
    """Realised and unrealised criticality indices per order."""
    if source:
        report = verify_open_problem(max_n, read_csv(source))
    else:
        report = verify_open_problem(max_n, allow_large=allow_large)
    click.echo(report.to_text().rstrip("\n") if as_text else report.to_json())


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
