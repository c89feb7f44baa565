"""Command-line interface.

Every command reads a graph in the line-oriented text format, runs one
library operation, and prints the result (JSON by default).  Exit codes
support shell pipelines: 0 carries a result (including ``false``), 1
means "no such set exists" (a ``null``/empty outcome), 2 is a usage,
parse, or validation error.
"""

from __future__ import annotations

import functools
import json
import sys
from itertools import islice

import click

from .adjustment import (
    enumerate_adjustments,
    find_adjustment,
    pearl_backdoor,
    test_adjustment,
)
from .basis import basis_stats, parental_basis, sparse_basis
from .enumeration import list_min_sep, list_sep
from .experiments import ExperimentConfig, render_csv, run_experiment
from .graph import GraphDoc, parse_graph, serialize_graph, validate
from .identify import identify_effect
from .mag import canonical_dag, dag_to_mag, mag_adjustment, test_amenability
from .separation import (
    ANY,
    I_MINIMAL,
    I_MINIMUM,
    STRONG_MINIMUM,
    SepQuery,
    find_min_cost_sep,
    find_min_sep,
    find_sep,
    test_min_sep,
    test_sep,
)

__all__ = ["cli", "main"]


def _guard(fn):
    """Turn library ValueErrors into exit-code-2 failures with a message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _split(value):
    if value is None:
        return None
    parts = [p.strip() for p in value.split(",")]
    return tuple(p for p in parts if p)


_graph_opt = click.option(
    "--graph", "graph_file", required=True, type=click.File("r"),
    help="Graph file (text format: 'node <id> [role]' / 'edge A -> B').",
)
_x_opt = click.option("-x", "x_arg", default=None, help="Exposure nodes, comma-separated.")
_y_opt = click.option("-y", "y_arg", default=None, help="Outcome nodes, comma-separated.")
_i_opt = click.option("-i", "i_arg", default=None, help="Context nodes the result must contain.")
_z_opt = click.option("-z", "z_arg", default=None, help="Candidate set to test.")
_observed_opt = click.option(
    "--observed", "observed_arg", default=None,
    help="Override the observed node set (comma-separated).",
)
_latent_opt = click.option(
    "--latent", "latent_arg", default=None,
    help="Override the latent node set; observed is the complement.",
)
_fmt_opt = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json",
    show_default=True, help="Output format.",
)
_limit_opt = click.option(
    "--limit", type=click.IntRange(min=0), default=None,
    help="Stop a listing after this many sets (stream stays lazy).",
)
_minimality_opt = click.option(
    "--minimality", type=click.Choice(["none", "i", "strong"]), default="none",
    show_default=True,
    help="For test: required minimality. For find-min-cost: strong picks "
    "the strongly-minimum objective.",
)
_cost_opt = click.option(
    "--cost", "cost_file", type=click.File("r"), default=None,
    help="Cost file: lines of 'node weight'; unlisted nodes weigh 1.",
)
_strategy_opt = click.option(
    "--strategy", type=click.Choice(["dense", "sparse"]), default="dense",
    show_default=True, help="Minimality-test strategy.",
)


def _load(graph_file, graph_class=None) -> GraphDoc:
    doc = parse_graph(graph_file.read())
    if graph_class is not None:
        problems = validate(doc.graph, graph_class)
        if problems:
            raise ValueError(f"not a valid {graph_class}: {problems[0]}")
    return doc


def _endpoint(doc: GraphDoc, arg, role: str, flag: str):
    nodes = _split(arg)
    if nodes is None:
        nodes = getattr(doc, role)
    if not nodes:
        raise ValueError(
            f"no {role} nodes: pass {flag} or declare 'node <id> {role}' in the graph"
        )
    return frozenset(nodes)


def _context_set(doc: GraphDoc, i_arg):
    nodes = _split(i_arg)
    return doc.context if nodes is None else frozenset(nodes)


def _candidates(doc: GraphDoc, observed_arg, latent_arg):
    if observed_arg is not None and latent_arg is not None:
        raise ValueError("pass --observed or --latent, not both")
    if observed_arg is not None:
        return frozenset(_split(observed_arg))
    if latent_arg is not None:
        return doc.graph.node_set - frozenset(_split(latent_arg))
    return doc.observed


def _parse_cost(cost_file):
    if cost_file is None:
        return None
    cost = {}
    for lineno, raw in enumerate(cost_file, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"cost line {lineno}: expected 'node weight'")
        try:
            cost[parts[0]] = float(parts[1])
        except ValueError:
            raise ValueError(f"cost line {lineno}: bad weight {parts[1]!r}") from None
    return cost


def _emit_bool(value: bool, fmt: str) -> None:
    click.echo("true" if value else "false")


def _emit_set(value, fmt: str) -> None:
    """Print one node set; ``None`` prints as null and exits 1."""
    if fmt == "json":
        click.echo(json.dumps(None if value is None else sorted(value)))
    else:
        click.echo("(none)" if value is None else ",".join(sorted(value)) or "(empty)")
    if value is None:
        sys.exit(1)


def _emit_sets(stream, limit, fmt: str) -> None:
    """Print a lazily-pulled list of node sets; empty output exits 1."""
    taken = list(islice(stream, limit))
    if fmt == "json":
        click.echo(json.dumps([sorted(z) for z in taken]))
    else:
        for z in taken:
            click.echo(",".join(sorted(z)) or "(empty)")
    if not taken:
        sys.exit(1)


def _emit_doc(doc: dict, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(doc))
    else:
        for key, value in doc.items():
            click.echo(f"{key}: {value}")


@click.group()
@click.version_option(package_name="causalsep", prog_name="causalsep")
def cli() -> None:
    """m-separation, covariate adjustment and identification toolkit."""


# --------------------------------------------------------------------------
# sep: plain m-separation on DAGs / ancestral graphs


@cli.group()
def sep() -> None:
    """m-separator queries (DAGs and ancestral graphs)."""


def _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg) -> SepQuery:
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    return SepQuery.of(
        x, y, _context_set(doc, i_arg), _candidates(doc, observed_arg, latent_arg)
    )


@sep.command("test")
@_graph_opt
@_x_opt
@_y_opt
@_z_opt
@_i_opt
@_minimality_opt
@_strategy_opt
@_fmt_opt
@_guard
def sep_test(graph_file, x_arg, y_arg, z_arg, i_arg, minimality, strategy, fmt):
    """Test whether -z m-separates -x from -y (optionally minimally)."""
    doc = _load(graph_file, "ag")
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    z = _split(z_arg)
    if z is None:
        raise ValueError("pass -z with the candidate separator")
    z = frozenset(z)
    if minimality == "none":
        result = test_sep(doc.graph, x, y, z)
    else:
        m = _context_set(doc, i_arg) if minimality == "i" else frozenset()
        result = test_min_sep(doc.graph, x, y, z, m=m, strategy=strategy)
    _emit_bool(result, fmt)


@sep.command("find")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_fmt_opt
@_guard
def sep_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, fmt):
    """Find any separator with I ⊆ Z ⊆ observed."""
    doc = _load(graph_file, "ag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_set(find_sep(doc.graph, q), fmt)


@sep.command("find-min")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_strategy_opt
@_fmt_opt
@_guard
def sep_find_min(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, strategy, fmt):
    """Find an inclusion-minimal separator."""
    doc = _load(graph_file, "ag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_set(find_min_sep(doc.graph, q, strategy=strategy), fmt)


@sep.command("find-min-cost")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_cost_opt
@_minimality_opt
@_fmt_opt
@_guard
def sep_find_min_cost(
    graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, cost_file, minimality, fmt
):
    """Find a minimum-cost separator (--minimality strong for the
    strongly-minimum objective)."""
    doc = _load(graph_file, "ag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    objective = STRONG_MINIMUM if minimality == "strong" else I_MINIMUM
    result = find_min_cost_sep(doc.graph, q, cost=_parse_cost(cost_file), objective=objective)
    _emit_set(result, fmt)


@sep.command("list")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_limit_opt
@_fmt_opt
@_guard
def sep_list(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, limit, fmt):
    """Enumerate all separators (lazy; cap with --limit)."""
    doc = _load(graph_file, "ag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_sets(list_sep(doc.graph, q), limit, fmt)


@sep.command("list-min")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_limit_opt
@_fmt_opt
@_guard
def sep_list_min(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, limit, fmt):
    """Enumerate all minimal separators (lazy; cap with --limit)."""
    doc = _load(graph_file, "ag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_sets(list_min_sep(doc.graph, q), limit, fmt)


# --------------------------------------------------------------------------
# adj: covariate adjustment in DAGs


@cli.group()
def adj() -> None:
    """Covariate-adjustment queries (DAGs)."""


@adj.command("test")
@_graph_opt
@_x_opt
@_y_opt
@_z_opt
@_i_opt
@_minimality_opt
@_strategy_opt
@_fmt_opt
@_guard
def adj_test(graph_file, x_arg, y_arg, z_arg, i_arg, minimality, strategy, fmt):
    """Test whether -z is a valid (optionally minimal) adjustment set."""
    doc = _load(graph_file, "dag")
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    z = _split(z_arg)
    if z is None:
        raise ValueError("pass -z with the candidate adjustment set")
    i = _context_set(doc, i_arg) if minimality == "i" else frozenset()
    result = test_adjustment(
        doc.graph, x, y, frozenset(z), minimality=minimality, i=i, strategy=strategy
    )
    _emit_bool(result, fmt)


@adj.command("find")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_fmt_opt
@_guard
def adj_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, fmt):
    """Find any adjustment set with I ⊆ Z ⊆ observed."""
    doc = _load(graph_file, "dag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_set(find_adjustment(doc.graph, q), fmt)


@adj.command("find-min")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_strategy_opt
@_fmt_opt
@_guard
def adj_find_min(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, strategy, fmt):
    """Find an inclusion-minimal adjustment set."""
    doc = _load(graph_file, "dag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_set(find_adjustment(doc.graph, q, objective=I_MINIMAL, strategy=strategy), fmt)


@adj.command("find-min-cost")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_cost_opt
@_minimality_opt
@_fmt_opt
@_guard
def adj_find_min_cost(
    graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, cost_file, minimality, fmt
):
    """Find a minimum-cost adjustment set."""
    doc = _load(graph_file, "dag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    objective = STRONG_MINIMUM if minimality == "strong" else I_MINIMUM
    result = find_adjustment(
        doc.graph, q, objective=objective, cost=_parse_cost(cost_file)
    )
    _emit_set(result, fmt)


@adj.command("list")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_limit_opt
@_fmt_opt
@_guard
def adj_list(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, limit, fmt):
    """Enumerate all adjustment sets (lazy; cap with --limit)."""
    doc = _load(graph_file, "dag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_sets(enumerate_adjustments(doc.graph, q), limit, fmt)


@adj.command("list-min")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_limit_opt
@_fmt_opt
@_guard
def adj_list_min(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, limit, fmt):
    """Enumerate all minimal adjustment sets (lazy; cap with --limit)."""
    doc = _load(graph_file, "dag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    _emit_sets(enumerate_adjustments(doc.graph, q, minimal=True), limit, fmt)


@adj.command("backdoor")
@_graph_opt
@_x_opt
@_y_opt
@_z_opt
@_observed_opt
@_latent_opt
@_fmt_opt
@_guard
def adj_backdoor(graph_file, x_arg, y_arg, z_arg, observed_arg, latent_arg, fmt):
    """Pearl's back-door criterion: test -z if given, otherwise find."""
    doc = _load(graph_file, "dag")
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    z = _split(z_arg)
    if z is not None:
        _emit_bool(pearl_backdoor(doc.graph, x, y, mode="test", z=frozenset(z)), fmt)
    else:
        r = _candidates(doc, observed_arg, latent_arg)
        _emit_set(pearl_backdoor(doc.graph, x, y, mode="find", r=r), fmt)


# --------------------------------------------------------------------------
# mag: maximal ancestral graphs


@cli.group()
def mag() -> None:
    """Adjustment in maximal ancestral graphs."""


@mag.command("amenable")
@_graph_opt
@_x_opt
@_y_opt
@_fmt_opt
@_guard
def mag_amenable(graph_file, x_arg, y_arg, fmt):
    """Test adjustment amenability (visibility of exposure edges)."""
    doc = _load(graph_file, "mag")
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    _emit_bool(test_amenability(doc.graph, x, y), fmt)


@mag.group("adj")
def mag_adj() -> None:
    """Covariate-adjustment queries on a MAG."""


@mag_adj.command("test")
@_graph_opt
@_x_opt
@_y_opt
@_z_opt
@_i_opt
@_minimality_opt
@_strategy_opt
@_fmt_opt
@_guard
def mag_adj_test(graph_file, x_arg, y_arg, z_arg, i_arg, minimality, strategy, fmt):
    """Test whether -z is a valid (optionally minimal) adjustment set."""
    doc = _load(graph_file, "mag")
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    z = _split(z_arg)
    if z is None:
        raise ValueError("pass -z with the candidate adjustment set")
    i = _context_set(doc, i_arg) if minimality == "i" else frozenset()
    result = mag_adjustment(
        doc.graph, "test", x=x, y=y, z=frozenset(z),
        minimality=minimality, i=i, strategy=strategy,
    )
    _emit_bool(result, fmt)


def _mag_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
              objective, cost, strategy, fmt):
    doc = _load(graph_file, "mag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    result = mag_adjustment(
        doc.graph, "find", q=q, objective=objective, cost=cost, strategy=strategy
    )
    _emit_set(result, fmt)


@mag_adj.command("find")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_fmt_opt
@_guard
def mag_adj_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, fmt):
    """Find any adjustment set with I ⊆ Z ⊆ observed."""
    _mag_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
              ANY, None, "dense", fmt)


@mag_adj.command("find-min")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_strategy_opt
@_fmt_opt
@_guard
def mag_adj_find_min(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
                     strategy, fmt):
    """Find an inclusion-minimal adjustment set."""
    _mag_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
              I_MINIMAL, None, strategy, fmt)


@mag_adj.command("find-min-cost")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_cost_opt
@_minimality_opt
@_fmt_opt
@_guard
def mag_adj_find_min_cost(graph_file, x_arg, y_arg, i_arg, observed_arg,
                          latent_arg, cost_file, minimality, fmt):
    """Find a minimum-cost adjustment set."""
    objective = STRONG_MINIMUM if minimality == "strong" else I_MINIMUM
    _mag_find(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
              objective, _parse_cost(cost_file), "dense", fmt)


def _mag_enumerate(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
                   minimal, limit, fmt):
    doc = _load(graph_file, "mag")
    q = _sep_query(doc, x_arg, y_arg, i_arg, observed_arg, latent_arg)
    stream = mag_adjustment(doc.graph, "enumerate", q=q, minimal=minimal)
    _emit_sets(stream, limit, fmt)


@mag_adj.command("list")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_limit_opt
@_fmt_opt
@_guard
def mag_adj_list(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg, limit, fmt):
    """Enumerate all adjustment sets (lazy; cap with --limit)."""
    _mag_enumerate(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
                   False, limit, fmt)


@mag_adj.command("list-min")
@_graph_opt
@_x_opt
@_y_opt
@_i_opt
@_observed_opt
@_latent_opt
@_limit_opt
@_fmt_opt
@_guard
def mag_adj_list_min(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
                     limit, fmt):
    """Enumerate all minimal adjustment sets (lazy; cap with --limit)."""
    _mag_enumerate(graph_file, x_arg, y_arg, i_arg, observed_arg, latent_arg,
                   True, limit, fmt)


@mag.command("from-dag")
@_graph_opt
@_latent_opt
@_fmt_opt
@_guard
def mag_from_dag(graph_file, latent_arg, fmt):
    """Project a DAG onto its observed nodes, yielding a MAG."""
    doc = _load(graph_file, "dag")
    latent = frozenset(_split(latent_arg)) if latent_arg is not None else doc.latent
    projected = dag_to_mag(doc.graph, latent)
    if fmt == "json":
        click.echo(json.dumps({
            "nodes": sorted(projected.nodes),
            "edges": sorted([u, kind, v] for u, kind, v in projected.edges()),
        }))
    else:
        click.echo(serialize_graph(GraphDoc(graph=projected)), nl=False)


@mag.command("canonical")
@_graph_opt
@_fmt_opt
@_guard
def mag_canonical(graph_file, fmt):
    """Expand a MAG into a canonical DAG with one latent per <-> edge."""
    doc = _load(graph_file, "mag")
    dag, latent = canonical_dag(doc.graph)
    if fmt == "json":
        click.echo(json.dumps({
            "nodes": sorted(dag.nodes),
            "edges": sorted([u, kind, v] for u, kind, v in dag.edges()),
            "latent": sorted(latent),
        }))
    else:
        click.echo(serialize_graph(GraphDoc(graph=dag, latent=latent)), nl=False)


# --------------------------------------------------------------------------
# ident / basis / bench


@cli.group()
def ident() -> None:
    """Effect-identification classification."""


@ident.command("classify")
@_graph_opt
@_x_opt
@_y_opt
@_observed_opt
@_latent_opt
@click.option("--extended", is_flag=True,
              help="Also try parent adjustment and the partition product.")
@_fmt_opt
@_guard
def ident_classify(graph_file, x_arg, y_arg, observed_arg, latent_arg, extended, fmt):
    """Label identifiability (BC/CBC/CBC_PLUS/...) with a witness formula."""
    doc = _load(graph_file, "dag")
    x = _endpoint(doc, x_arg, "exposure", "-x")
    y = _endpoint(doc, y_arg, "outcome", "-y")
    r = _candidates(doc, observed_arg, latent_arg) | x | y
    label, formula = identify_effect(doc.graph, x, y, r=r, extended=extended)
    if fmt == "json":
        click.echo(json.dumps({"label": label, "formula": formula.to_json()}))
    else:
        click.echo(f"{label}: {formula.render()}")


@cli.group()
def basis() -> None:
    """Pairwise-independence basis sets for model checking."""


def _emit_claims(claims, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(
            [{"i": c.i, "j": c.j, "z": list(c.z), "kind": c.kind} for c in claims]
        ))
    elif fmt == "csv":
        click.echo("i,j,kind,z")
        for c in claims:
            click.echo(f"{c.i},{c.j},{c.kind},{';'.join(c.z)}")
    else:
        for c in claims:
            cond = f" | {','.join(c.z)}" if c.z else ""
            click.echo(f"{c.i} _||_ {c.j}{cond}")


@basis.command("parental")
@_graph_opt
@_fmt_opt
@_guard
def basis_parental(graph_file, fmt):
    """Claims conditioning each nonadjacent pair on the later node's parents."""
    doc = _load(graph_file, "dag")
    _emit_claims(parental_basis(doc.graph), fmt)


@basis.command("sparse")
@_graph_opt
@_fmt_opt
@_guard
def basis_sparse(graph_file, fmt):
    """Claims conditioning on minimal distance-respecting separators."""
    doc = _load(graph_file, "dag")
    _emit_claims(sparse_basis(doc.graph), fmt)


@basis.command("stats")
@_graph_opt
@_fmt_opt
@_guard
def basis_stats_cmd(graph_file, fmt):
    """Total conditioning sizes of both bases and the relative saving."""
    doc = _load(graph_file, "dag")
    stats = basis_stats(doc.graph)
    if fmt == "csv":
        click.echo("pairs,parental_total,sparse_total,reduction_pct")
        click.echo(
            f"{stats['pairs']},{stats['parental_total']},"
            f"{stats['sparse_total']},{stats['reduction_pct']:.2f}"
        )
    else:
        _emit_doc(stats, fmt)


@cli.group()
def bench() -> None:
    """Random-instance experiment cells (one CSV/JSON row each)."""


def _row_json(row, timing: bool) -> dict:
    cfg = row.config
    doc = {"n": cfg.n, "l": cfg.l}
    if cfg.mode != "basis_sets":
        doc.update({"k": cfg.k, "p_unobserved": cfg.p_unobserved})
    doc.update({"instances": cfg.instances, "seed": cfg.seed})
    if cfg.mode == "basis_sets":
        reduction = (
            0.0 if not row.parental_total
            else 100.0 * (1.0 - row.sparse_total / row.parental_total)
        )
        doc.update({
            "parental_total": row.parental_total,
            "sparse_total": row.sparse_total,
            "reduction_pct": round(reduction, 2),
        })
    else:
        doc.update({"bc": row.bc, "cbc": row.cbc, "cbc_plus": row.cbc_plus})
        if cfg.mode == "mag_ident":
            doc.update({"mag_ee": row.mag_ee, "mag_el": row.mag_el})
    if timing:
        doc.update({
            "t_mean_us": round(row.t_mean_us, 1),
            "t_p99_us": round(row.t_p99_us, 1),
        })
    return doc


def _emit_row(row, fmt: str, timing: bool) -> None:
    if fmt == "json":
        click.echo(json.dumps(_row_json(row, timing)))
    else:
        click.echo(render_csv([row], timing=timing), nl=False)


_bench_common = [
    click.option("--n", "n", type=click.IntRange(min=1), required=True,
                 help="Node count."),
    click.option("--l", "l", type=click.IntRange(min=1), required=True,
                 help="Expected neighbor count."),
    click.option("--instances", type=click.IntRange(min=1), default=1000,
                 show_default=True),
    click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True),
    click.option("--no-timing", "no_timing", is_flag=True,
                 help="Blank wall-clock columns for reproducible output."),
]


def _with(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn
    return deco


@bench.command("dag")
@_with(_bench_common)
@click.option("--k", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--p", "p_unobserved", type=click.FloatRange(0.0, 1.0), default=0.0,
              show_default=True, help="Per-node unobserved probability.")
@_fmt_opt
@_guard
def bench_dag(n, l, instances, seed, no_timing, k, p_unobserved, fmt):
    """Tally BC/CBC/CBC+ identifiability over random DAG instances."""
    cfg = ExperimentConfig(n=n, l=l, k=k, p_unobserved=p_unobserved,
                           instances=instances, seed=seed, mode="dag_ident")
    _emit_row(run_experiment(cfg), fmt, not no_timing)


@bench.command("mag")
@_with(_bench_common)
@click.option("--k", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--p", "p_unobserved", type=click.FloatRange(0.0, 1.0), default=0.0,
              show_default=True, help="Per-node unobserved probability.")
@click.option("--mag-el-max-n", type=click.IntRange(min=1), default=None,
              help="Skip the projected-MAG column above this node count.")
@_fmt_opt
@_guard
def bench_mag(n, l, instances, seed, no_timing, k, p_unobserved, mag_el_max_n, fmt):
    """DAG tallies plus adjustment existence in the instance read as a MAG
    and in its projection onto the observed nodes."""
    cfg = ExperimentConfig(n=n, l=l, k=k, p_unobserved=p_unobserved,
                           instances=instances, seed=seed, mode="mag_ident",
                           mag_el_max_n=mag_el_max_n)
    _emit_row(run_experiment(cfg), fmt, not no_timing)


@bench.command("basis")
@_with(_bench_common)
@_fmt_opt
@_guard
def bench_basis(n, l, instances, seed, no_timing, fmt):
    """Compare parental and sparse basis-set sizes over random DAGs."""
    cfg = ExperimentConfig(n=n, l=l, instances=instances, seed=seed,
                           mode="basis_sets")
    _emit_row(run_experiment(cfg), fmt, not no_timing)


def main() -> None:
    cli(prog_name="causalsep")


if __name__ == "__main__":
    main()
