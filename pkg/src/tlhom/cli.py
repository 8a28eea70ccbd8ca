#!/usr/bin/env python3
"""
tlhom CLI - homology computations for Temperley-Lieb algebras.

Usage:
    tlhom mul --n 5 --ring Z --a 7 "U2 U1 U4 U2 U3" "1"
    tlhom wn --n 3 --ring Q --v 1
    tlhom tor --n 2 --ring Z --a 2 --max-degree 4
    tlhom qbc --n 4 --delta-zero
    tlhom verify tor-sequence --n 2 --ring Z --v 1
    tlhom repro --quick
"""
import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.panel import Panel
from pydantic import TypeAdapter
from rich.table import Table

from .coeff import DirectA, FromUnit, ParamContext, Theta, make_context, parse_ring_tag
from .complex import (
    build_W,
    filtration_basis,
    filtration_quotient,
    is_chain_iso,
    load_complex,
    phi0,
    psik,
    save_complex,
)
from .config import AppConfig, default_config, resolution_budget
from .diagram import (
    catalan,
    diagram_to_jones_word,
    diagram_to_json,
    fine_number,
    jacobsthal_number,
    jones_word_to_diagram,
)
from .errors import TLHomError, UsageError, exit_code_for
from .homology import (
    HomologyGroup,
    LeftModule,
    coinvariants,
    ext_trivial,
    fineberg_module,
    free_resolution,
    homology_of,
    induced_as_module,
    tor_trivial,
    trivial_module,
    verify_acyclicity,
    verify_ext_sequence,
    verify_shifted_iso,
    verify_tor_sequence,
)
from .induced import induced_basis, vector_to_element
from .jw import compute_jw, jw_exists, odd_vanishing_applies, qbc_delta_zero, quantum_binomial
from .records import (
    ComplexReport,
    DegreeGroupRecord,
    DiagramRecord,
    ElementRecord,
    TermRecord,
    VerificationReport,
)
from .repro import ReproSuite
from .tlalg import TLElement, from_word, jones_normal_form, multiply, parse_word, render_element
from .utils import load_config, setup_logger

app = typer.Typer(
    name="tlhom",
    help="Homology of Temperley-Lieb algebras",
    add_completion=True,
)
verify_app = typer.Typer(help="Check exact sequences and acyclicity claims")
app.add_typer(verify_app, name="verify")

console = Console()
logger = logging.getLogger(__name__)

# Loaded once per invocation by the callback
state: dict[str, AppConfig] = {"config": default_config}
degree_groups = TypeAdapter(list[DegreeGroupRecord])

N = Annotated[int, typer.Option("--n", help="Number of strands")]
RingTag = Annotated[Optional[str], typer.Option("--ring", help="Coefficient ring: Z, Q or Fp:<p>")]
AValue = Annotated[Optional[str], typer.Option("--a", help="Loop value a (exclusive with --v)")]
VValue = Annotated[Optional[str], typer.Option("--v", help="Unit v with a = v + 1/v")]
ThetaOpt = Annotated[Optional[Theta], typer.Option("--theta", help="theta1: s = -1 + vU, theta2: s = v^2 - vU")]
AsJson = Annotated[bool, typer.Option("--json", help="Print JSON instead of tables")]
SaveDir = Annotated[Optional[Path], typer.Option("--save", help="Directory for tlmat matrices")]


@app.callback()
def main(
    config: Annotated[Optional[Path], typer.Option("--config", help="Path to tlhom.yaml")] = None,
    log_level: Annotated[Optional[str], typer.Option("--log-level", help="DEBUG, INFO, WARNING, ERROR")] = None,
):
    """Homology of Temperley-Lieb algebras."""
    try:
        state["config"] = load_config(config)
    except FileNotFoundError as exc:
        console.print(f"[red]✗ {exc}[/red]")
        raise typer.Exit(1)
    try:
        setup_logger("tlhom", log_level or state["config"].log_level)
    except ValueError as exc:
        console.print(f"[red]✗ {exc}[/red]")
        raise typer.Exit(1)


@contextmanager
def handle_errors():
    """Print tlhom errors in red and exit with their code."""
    try:
        yield
    except TLHomError as exc:
        console.print(f"[red]✗ {type(exc).__name__}: {exc}[/red]")
        raise typer.Exit(exit_code_for(exc))
    except FileNotFoundError as exc:
        console.print(f"[red]✗ {exc}[/red]")
        raise typer.Exit(1)


def build_context(ring: str | None, a: str | None, v: str | None, theta: Theta | None,
                  need_unit: bool = False) -> ParamContext:
    """Turn the ring flags into a ParamContext, falling back to the configured defaults."""
    settings = state["config"]
    spec = parse_ring_tag(ring or settings.ring.ring)
    if a is None and v is None:
        raise UsageError("give exactly one of --a or --v")
    if a is not None and v is not None:
        raise UsageError("--a and --v are mutually exclusive")
    if need_unit and v is None:
        raise UsageError("this subcommand needs --v")
    theta = theta or Theta(settings.ring.theta)
    if v is not None:
        return make_context(spec, FromUnit(spec.parse_value(v)), theta)
    return make_context(spec, DirectA(spec.parse_value(a)), theta)


def wants_json(flag: bool) -> bool:
    return flag or state["config"].output.json


def save_target(save: Path | None, name: str) -> Path | None:
    """--save wins; otherwise a subdirectory of output.save_dir when one is configured."""
    if save is not None:
        return save
    save_dir = state["config"].output.save_dir
    return Path(save_dir) / name if save_dir else None


def emit_json(model) -> None:
    typer.echo(model.model_dump_json(indent=2))


def element_record(x: TLElement) -> ElementRecord:
    terms = [
        TermRecord(
            coefficient=x.ring.format(c),
            word=diagram_to_jones_word(d).render(),
            diagram=DiagramRecord(n=d.n, pairs=[list(p) for p in d.labelled_pairs()]),
        )
        for d, c in sorted(x.items(), key=lambda t: diagram_to_jones_word(t[0]).sort_key())
    ]
    return ElementRecord(n=x.n, ring=x.ring.tag, rendering=render_element(x), terms=terms)


def groups_table(title: str, groups: dict[int, HomologyGroup], ctx: ParamContext,
                 dims: dict[int, int] | None = None) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Degree", style="cyan", justify="right")
    if dims is not None:
        table.add_column("Dim", justify="right")
    table.add_column("Group")
    for d, g in groups.items():
        cell = "[green]0[/green]" if g.is_zero() else f"[yellow]{g.render(ctx.ring)}[/yellow]"
        row = [str(d)] + ([str(dims.get(d, 0))] if dims is not None else []) + [cell]
        table.add_row(*row)
    return table


def report_verdict(report: VerificationReport, as_json: bool) -> None:
    if wants_json(as_json):
        emit_json(report)
        return
    verdict = "[green]PASS[/green]" if report.passed else "[red]FAIL[/red]"
    console.print(Panel(f"{report.name}: {verdict}\n{report.context}", title="Verdict"))
    console.print_json(report.model_dump_json())


def parse_module(ctx: ParamContext, n: int, spec: str) -> LeftModule:
    """``trivial``, ``induced:M`` or ``fineberg``."""
    if spec == "trivial":
        return trivial_module(ctx, n)
    if spec == "fineberg":
        return fineberg_module(ctx, n)
    if spec.startswith("induced:"):
        try:
            m = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad module {spec!r}") from exc
        return induced_as_module(ctx, n, m)
    raise UsageError(f"unknown module {spec!r}; expected trivial, induced:M or fineberg")


@app.command()
def mul(
    n: N,
    left: Annotated[str, typer.Argument(help="First word, e.g. 'U2 U1'")],
    right: Annotated[str, typer.Argument(help="Second word, '1' for the identity")],
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """Multiply two words and print the product in the Jones basis."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta)
        x = multiply(ctx, from_word(ctx, parse_word(n, left)), from_word(ctx, parse_word(n, right)))
        if wants_json(as_json):
            emit_json(element_record(x))
        else:
            typer.echo(render_element(x))


@app.command()
def diagram(
    n: N,
    word: Annotated[str, typer.Argument(help="Word in U1..U(n-1)")],
    as_json: AsJson = False,
):
    """Show the Jones normal form and the diagram of a word."""
    with handle_errors():
        k, jones = jones_normal_form(parse_word(n, word))
        d = jones_word_to_diagram(jones)
        if wants_json(as_json):
            typer.echo(diagram_to_json(d))
            return
        console.print(f"[cyan]{word}[/cyan] = a^{k} * {jones.render()}")
        console.print(f"index {jones.index}, terminus {jones.terminus}")
        console.print(diagram_to_json(d))


@app.command()
def wn(
    n: N,
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False, save: SaveDir = None,
):
    """Build W(n) and print its dimensions and homology."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=True)
        X = build_W(ctx, n)
        groups = homology_of(X)
        save = save_target(save, f"w{n}")
        if save is not None:
            save_complex(X, save)
        expected = fine_number(n) if ctx.ring.is_field else None
        if wants_json(as_json):
            emit_json(ComplexReport(
                name=X.name, context=ctx.describe(),
                dims={str(i): d for i, d in X.dims().items()},
                homology=[DegreeGroupRecord(degree=i, group=g.to_record()) for i, g in groups.items()],
                expected_top_rank=expected,
            ))
            return
        console.print(groups_table(f"{X.name} over {ctx.describe()}", groups, ctx, X.dims()))
        if expected is not None:
            top = groups[n - 1].rank
            mark = "[green]✓[/green]" if top == expected else "[red]✗[/red]"
            console.print(f"top rank {top}, Fine number {expected} {mark}")
        if save is not None:
            console.print(f"[green]✓ Saved to {save}[/green]")


@app.command()
def homology(
    directory: Annotated[Path, typer.Argument(help="Directory written by --save")],
    as_json: AsJson = False,
):
    """Reload a saved complex and print its homology."""
    with handle_errors():
        X = load_complex(directory)
        groups = homology_of(X)
        if wants_json(as_json):
            emit_json(ComplexReport(
                name=X.name, context=X.ring.tag,
                dims={str(i): d for i, d in X.dims().items()},
                homology=[DegreeGroupRecord(degree=i, group=g.to_record()) for i, g in groups.items()],
            ))
            return
        table = Table(title=f"{X.name} over {X.ring.tag}", show_header=True, header_style="bold magenta")
        table.add_column("Degree", style="cyan", justify="right")
        table.add_column("Group")
        for i, g in groups.items():
            table.add_row(str(i), g.render(X.ring))
        console.print(table)


def _tor_or_ext(kind: str, n, max_degree, module, ring, a, v, theta, as_json, budget) -> None:
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=module == "fineberg")
        budget = resolution_budget(state["config"]) if budget is None else budget
        max_degree = max_degree if max_degree is not None else state["config"].resolution.max_degree
        M = parse_module(ctx, n, module)
        compute = tor_trivial if kind == "Tor" else ext_trivial
        groups = dict(enumerate(compute(ctx, M, max_degree, budget)))
        if wants_json(as_json):
            records = [DegreeGroupRecord(degree=d, group=g.to_record()) for d, g in groups.items()]
            typer.echo(degree_groups.dump_json(records, indent=2).decode())
            return
        notes = [f"{kind} over TL_{n} of 1 and {M.name}", ctx.describe()]
        if ctx.a_is_unit:
            notes.append("a is a unit: positive degrees vanish")
        if odd_vanishing_applies(ctx, n):
            notes.append("n odd, a = 0, char avoids the binomials: degrees 1..n-1 vanish")
        console.print(Panel("\n".join(notes), title=kind))
        console.print(groups_table(kind, groups, ctx))


@app.command()
def tor(
    n: N,
    max_degree: Annotated[Optional[int], typer.Option("--max-degree", help="Compute degrees 0..L-1")] = None,
    module: Annotated[str, typer.Option("--module", help="trivial, induced:M or fineberg")] = "trivial",
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
    budget: Annotated[Optional[int], typer.Option("--budget", help="Resolution dimension budget")] = None,
):
    """Tor of the trivial right module with a left module."""
    _tor_or_ext("Tor", n, max_degree, module, ring, a, v, theta, as_json, budget)


@app.command()
def ext(
    n: N,
    max_degree: Annotated[Optional[int], typer.Option("--max-degree", help="Compute degrees 0..L-1")] = None,
    module: Annotated[str, typer.Option("--module", help="trivial, induced:M or fineberg")] = "trivial",
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
    budget: Annotated[Optional[int], typer.Option("--budget", help="Resolution dimension budget")] = None,
):
    """Ext of a left module into the trivial module."""
    _tor_or_ext("Ext", n, max_degree, module, ring, a, v, theta, as_json, budget)


@app.command()
def resolve(
    n: N,
    length: Annotated[int, typer.Option("--length", help="Top stage of the resolution")] = 3,
    module: Annotated[str, typer.Option("--module", help="trivial, induced:M or fineberg")] = "trivial",
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
    budget: Annotated[Optional[int], typer.Option("--budget", help="Resolution dimension budget")] = None,
):
    """Build a free resolution and print the rank of each stage."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=module == "fineberg")
        budget = resolution_budget(state["config"]) if budget is None else budget
        res = free_resolution(parse_module(ctx, n, module), length, budget)
        if wants_json(as_json):
            typer.echo(json.dumps({"ranks": res.ranks}))
            return
        table = Table(title=f"Free resolution of {res.module.name}", show_header=True, header_style="bold magenta")
        table.add_column("Stage", style="cyan", justify="right")
        table.add_column("Rank", justify="right")
        table.add_column("R-dimension", justify="right")
        for s, r in enumerate(res.ranks):
            table.add_row(str(s), str(r), str(r * res.algebra.C))
        console.print(table)


@app.command()
def jw(
    n: N,
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """Decide whether the Jones-Wenzl projector exists and compute it."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta)
        exists = jw_exists(ctx, n) if ctx.ring.is_field else None
        projector = compute_jw(ctx, n)
        if wants_json(as_json):
            payload = element_record(projector).model_dump() if projector is not None else None
            typer.echo(json.dumps({"exists": exists, "projector": payload}, indent=2))
            return
        if exists is not None:
            console.print(f"criterion: {'[green]exists[/green]' if exists else '[yellow]does not exist[/yellow]'}")
        if projector is None:
            console.print("[yellow]○ No solution over this ring[/yellow]")
        else:
            typer.echo(render_element(projector))


@app.command()
def qbc(
    n: N,
    delta_zero: Annotated[bool, typer.Option("--delta-zero", help="Evaluate at delta = 0")] = False,
    as_json: AsJson = False,
):
    """Print the row [n 0] ... [n n] of quantum binomials."""
    with handle_errors():
        if delta_zero:
            values = [qbc_delta_zero(n, r) for r in range(n + 1)]
            if wants_json(as_json):
                typer.echo(json.dumps(values))
            else:
                typer.echo(" ".join(str(x) for x in values))
            return
        polys = [quantum_binomial(n, r) for r in range(n + 1)]
        if wants_json(as_json):
            typer.echo(json.dumps([list(p.coefficients) for p in polys]))
            return
        for r, p in enumerate(polys):
            typer.echo(f"[{n} {r}] = {p.render()}")


@app.command()
def fineberg(
    n: N,
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """The Fineberg module: rank, basis and coinvariants."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=True)
        M = fineberg_module(ctx, n)
        basis = induced_basis(n, 0)
        elements = [vector_to_element(ctx, basis, vec) for vec in M.representatives or []]
        coinv = coinvariants(M)
        if wants_json(as_json):
            typer.echo(json.dumps({
                "rank": M.dim,
                "fine_number": fine_number(n),
                "basis": [render_element(x) for x in elements],
                "coinvariants": coinv.to_record().model_dump(),
            }, indent=2))
            return
        console.print(f"rank {M.dim} (Fine number {fine_number(n)})")
        for x in elements:
            typer.echo(render_element(x))
        console.print(f"coinvariants: {coinv.render(ctx.ring)}")


@app.command()
def filtration(
    n: N,
    k: Annotated[int, typer.Option("--k", help="Filtration level")],
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    check: Annotated[bool, typer.Option("--check", help="Verify the comparison map is a chain iso")] = False,
    as_json: AsJson = False,
):
    """Dimensions of F^k W(n), of F^k/F^(k-1), and the comparison isomorphisms."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=True)
        layer = {i: len(p) for i, p in filtration_basis(ctx, n, k).items()}
        quotient = None
        if k >= 1:
            Q = filtration_quotient(ctx, n, k)
            quotient = {i: Q.dim(i) for i in Q.degrees}
        iso = None
        if check:
            iso = is_chain_iso(phi0(ctx, n) if k == 0 else psik(ctx, n, k))
        if wants_json(as_json):
            typer.echo(json.dumps({"layer": layer, "quotient": quotient, "iso": iso}, indent=2))
            return
        table = Table(title=f"F^{k} W({n})", show_header=True, header_style="bold magenta")
        table.add_column("Degree", style="cyan", justify="right")
        table.add_column(f"F^{k}", justify="right")
        if quotient is not None:
            table.add_column(f"F^{k}/F^{k - 1}", justify="right")
        for i, d in layer.items():
            table.add_row(str(i), str(d), *([str(quotient[i])] if quotient is not None else []))
        console.print(table)
        if iso is not None:
            console.print("chain isomorphism: " + ("[green]✓[/green]" if iso else "[red]✗[/red]"))


@app.command()
def seq(
    kind: Annotated[str, typer.Argument(help="catalan, fine or jacobsthal")],
    upto: Annotated[int, typer.Option("--upto", help="Largest n")] = 8,
    as_json: AsJson = False,
):
    """Print an integer sequence for n = 0..upto."""
    with handle_errors():
        functions = {"catalan": catalan, "fine": fine_number, "jacobsthal": jacobsthal_number}
        if kind not in functions:
            raise UsageError(f"unknown sequence {kind!r}; expected catalan, fine or jacobsthal")
        values = [functions[kind](n) for n in range(upto + 1)]
        if wants_json(as_json):
            typer.echo(str(values))
        else:
            typer.echo(", ".join(str(x) for x in values))


@verify_app.command("tor-sequence")
def verify_tor(
    n: N,
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """0 -> Tor_n -> 1 (x) F_n -> R -> Tor_{n-1} -> 0 for even n."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=True)
        report_verdict(verify_tor_sequence(ctx, n, budget=resolution_budget(state["config"])), as_json)


@verify_app.command("ext-sequence")
def verify_ext(
    n: N,
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """0 -> Ext^{n-1} -> R -> Hom(F_n, 1) -> Ext^n -> 0 for even n."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=True)
        report_verdict(verify_ext_sequence(ctx, n, budget=resolution_budget(state["config"])), as_json)


@verify_app.command("shifted-iso")
def verify_shifted(
    n: N,
    max_degree: Annotated[int, typer.Option("--max-degree", help="Compare degrees below this")] = 6,
    kind: Annotated[str, typer.Option("--kind", help="tor or ext")] = "tor",
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """Tor_i(1, 1) against Tor_{i-n}(1, F_n) in the stable range."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta, need_unit=True)
        report = verify_shifted_iso(ctx, n, max_degree, kind, budget=resolution_budget(state["config"]))
        report_verdict(report, as_json)


@verify_app.command("acyclicity")
def verify_acyclic(
    n: N,
    m: Annotated[int, typer.Option("--m", help="Subalgebra index")],
    complex_kind: Annotated[str, typer.Option("--complex", help="C or D")] = "D",
    length: Annotated[int, typer.Option("--length", help="Truncation length L")] = 8,
    variant: Annotated[str, typer.Option("--variant", help="complex, coinvariants or invariants")] = "complex",
    ring: RingTag = None, a: AValue = None, v: VValue = None, theta: ThetaOpt = None,
    as_json: AsJson = False,
):
    """Interior homology of C(m) or D(m) vanishes."""
    with handle_errors():
        ctx = build_context(ring, a, v, theta)
        report_verdict(verify_acyclicity(ctx, complex_kind, n, m, length, variant), as_json)


@app.command()
def repro(
    quick: Annotated[bool, typer.Option("--quick", help="Skip the largest cases")] = False,
    as_json: AsJson = False,
):
    """Run the acceptance suite and print a scoreboard."""
    with handle_errors():
        rows = ReproSuite(quick=quick, budget=resolution_budget(state["config"])).run()
        if wants_json(as_json):
            typer.echo(json.dumps([r.model_dump() for r in rows], indent=2))
            return
        table = Table(title="Scoreboard", show_header=True, header_style="bold magenta")
        table.add_column("Item", style="cyan")
        table.add_column("Claim")
        table.add_column("Result", width=8)
        table.add_column("Seconds", justify="right")
        table.add_column("Detail")
        for r in rows:
            result = "[green]✓ PASS[/green]" if r.passed else "[red]✗ FAIL[/red]"
            table.add_row(r.item, r.claim, result, f"{r.seconds:.2f}", r.detail)
        console.print(table)
        passed = sum(r.passed for r in rows)
        console.print(f"\n{passed}/{len(rows)} items passed")


if __name__ == "__main__":
    app()
