"""Command-line interface for pointlike_lab.

Every command prints one JSON report on standard output and a rich summary on
standard error. Library errors become a JSON error object and exit code 1;
click usage errors exit with code 2.
"""

import functools
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from pointlike_lab.bitsets import member_list
from pointlike_lab.complexes import SComplex
from pointlike_lab.config import (
    Limits,
    get_config_path,
    get_default_config,
    get_default_law_order,
    get_limits,
    load_settings,
    save_config,
)
from pointlike_lab.enumeration import Dedup, enumerate_semigroups
from pointlike_lab.errors import PointlikeLabError
from pointlike_lab.formats import (
    emit_json,
    faces_to_lists,
    make_report,
    parse_modulus,
    parse_relmorph,
    parse_semigroup,
)
from pointlike_lab.laws import SUITES, run_all, run_suite
from pointlike_lab.logging import debug_mode, get_logger, setup_logging
from pointlike_lab.moduli import (
    completion_trace,
    eval_modulus,
    functor_value,
    points_member,
    points_pseudovariety,
)
from pointlike_lab.pointlikes import certify_exact, oracle_pointlikes, reversal_transfer_check
from pointlike_lab.pseudovarieties import (
    PARAMETERISED,
    PseudovarietyId,
    PseudovarietyKind,
    pv_member,
    reversed_pseudovariety,
)
from pointlike_lab.relmorph import is_division, nerve as nerve_of
from pointlike_lab.semigroup import (
    ElementKind,
    GreenRelation,
    Semigroup,
    SubsemigroupKind,
    element_sets,
    green_partition,
    special_subsemigroups,
)

console = Console(stderr=True)
logger = get_logger(__name__)

SEMIGROUP_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


def reported(func):
    """Turn library errors raised by a command into a JSON error and exit 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PointlikeLabError as e:
            click.echo(emit_json({"error": e.to_dict()}))
            console.print(f"[red]✗ {e}[/red]")
            sys.exit(1)

    return wrapper


def current_limits() -> Limits:
    """Limits resolved once by the group callback for this invocation."""
    return click.get_current_context().obj["limits"]


def read_semigroup(path: Path) -> Semigroup:
    return parse_semigroup(path.read_text(encoding="utf-8"), current_limits())


def emit(command: str, inputs: Dict[str, Any], result: Any) -> None:
    click.echo(emit_json(make_report(command, inputs, result)))


def describe_complex(k: SComplex) -> str:
    faces = " ".join("{" + ",".join(map(str, face)) + "}" for face in faces_to_lists(k.max_faces))
    return f"{k.face_count} faces, maximal: {faces}"


@click.group()
@click.version_option(version="0.1.0", prog_name="pointlike-lab")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging output")
@click.pass_context
def cli(ctx, verbose):
    """pointlike-lab - Pointlike sets of finite semigroups.

    Semigroups are read from .sgp files: the order n on the first line, then
    n rows of 0-based indices.

    \b
    Examples:
      pointlike-lab info z2.sgp                           Green structure
      pointlike-lab modulus join(grp,jcl) s.sgp           Evaluate a modulus
      pointlike-lab certify --pv aperiodic --modulus grp z2.sgp
      pointlike-lab enumerate --order 3 --dedup iso
      pointlike-lab check-laws --order 3
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose

    if verbose:
        ctx.with_resource(debug_mode())
    setup_logging()

    settings = load_settings()
    ctx.obj["config"] = settings
    ctx.obj["limits"] = get_limits(settings)


@cli.group()
def config():
    """Configuration management commands."""
    pass


@config.command("init")
@click.option("--force", is_flag=True, help="Overwrite an existing configuration")
def config_init(force):
    """Write the default limits to ~/.pointlike_lab/config.json."""
    path = get_config_path()
    if path.exists() and not force:
        console.print(f"[yellow]Configuration already exists at {path}[/yellow]")
        console.print("[dim]Use --force to overwrite it[/dim]")
        sys.exit(1)
    save_config(get_default_config())
    console.print(Panel.fit(
        "[bold cyan]pointlike-lab limits[/bold cyan]\n"
        f"[dim]Edit {path} to change the caps[/dim]",
        border_style="cyan"
    ))


@config.command("show")
def config_show():
    """Print the effective limits (defaults, file and environment merged)."""
    limits = current_limits()
    path = get_config_path()
    source = str(path) if path.exists() else "defaults"
    table = Table(title=f"Limits ({source})")
    table.add_column("Limit", style="cyan")
    table.add_column("Value", justify="right")
    values = asdict(limits)
    for name, value in values.items():
        table.add_row(name, str(value))
    console.print(table)
    emit("config show", {}, {"limits": values, "source": source})


@cli.command()
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def validate(file):
    """Check that FILE holds an associative multiplication table."""
    s = read_semigroup(file)
    console.print(f"[green]✓ Valid semigroup of order {s.order}[/green]")
    emit("validate", {"file": str(file)}, {"valid": True, "semigroup": s})


def _pv_predicates(s: Semigroup) -> Dict[str, bool]:
    return {
        kind.value: pv_member(PseudovarietyId(kind), s)
        for kind in PseudovarietyKind
        if kind not in PARAMETERISED or kind is PseudovarietyKind.NILPOTENT
    }


@cli.command()
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def info(file):
    """Green classes, idempotents, subgroups and membership predicates of FILE."""
    s = read_semigroup(file)
    green = {rel.value: faces_to_lists(green_partition(s, rel)) for rel in GreenRelation}
    predicates = _pv_predicates(s)
    result = {
        "order": s.order,
        "idempotents": member_list(element_sets(s, ElementKind.IDEMPOTENTS)),
        "regular": member_list(element_sets(s, ElementKind.REGULAR)),
        "group_elements": member_list(element_sets(s, ElementKind.GROUP_ELEMENTS)),
        "green": green,
        "subgroups": faces_to_lists(special_subsemigroups(s, SubsemigroupKind.SUBGROUPS)),
        "local_monoids": faces_to_lists(special_subsemigroups(s, SubsemigroupKind.LOCAL_MONOIDS)),
        "pseudovarieties": predicates,
    }

    table = Table(title=f"Semigroup of order {s.order}")
    table.add_column("Property", style="cyan")
    table.add_column("Value")
    table.add_row("idempotents", str(result["idempotents"]))
    table.add_row("regular", str(result["regular"]))
    for rel, classes in green.items():
        table.add_row(f"{rel}-classes", str(classes))
    members = [name for name, member in predicates.items() if member]
    table.add_row("member of", ", ".join(members) or "-")
    console.print(table)
    emit("info", {"file": str(file)}, result)


@cli.command()
@click.option("--dom", "dom_file", type=SEMIGROUP_FILE, required=True, help="Domain semigroup (.sgp)")
@click.option("--cod", "cod_file", type=SEMIGROUP_FILE, required=True, help="Codomain semigroup (.sgp)")
@click.option("--graph", "graph_file", type=SEMIGROUP_FILE, required=True, help="Relational morphism graph (.rel)")
@reported
def nerve(dom_file, cod_file, graph_file):
    """Nerve of the relational morphism given by --graph."""
    dom, cod = read_semigroup(dom_file), read_semigroup(cod_file)
    limits = current_limits()
    rho = parse_relmorph(graph_file.read_text(encoding="utf-8"), dom, cod, limits)
    k = nerve_of(rho, limits)
    division = is_division(rho)
    console.print(f"[cyan]Nerve:[/cyan] {describe_complex(k)}")
    if division:
        console.print("[green]✓ The relational morphism is a division[/green]")
    emit(
        "nerve",
        {"dom": str(dom_file), "cod": str(cod_file), "graph": str(graph_file)},
        {"relmorph": rho, "nerve": k, "division": division},
    )


@cli.command()
@click.argument("expression")
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def modulus(expression, file):
    """Evaluate the modulus EXPRESSION at FILE, with its induced complex."""
    s = read_semigroup(file)
    lam = parse_modulus(expression)
    sets = eval_modulus(lam, s, current_limits())
    k = functor_value(lam, s, current_limits())
    console.print(f"[cyan]{lam}[/cyan] has {len(sets)} sets at S")
    console.print(f"[cyan]Induced complex:[/cyan] {describe_complex(k)}")
    if lam.is_approximate:
        console.print("[yellow]⚠ Expression uses an approximate context[/yellow]")
    emit(
        "modulus",
        {"expression": expression, "file": str(file)},
        {
            "modulus": lam,
            "sets": faces_to_lists(sets),
            "functor_value": k,
            "approximate": lam.is_approximate,
        },
    )


@cli.command()
@click.argument("expression")
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def complete(expression, file):
    """Monad completion of the modulus EXPRESSION at FILE, level by level."""
    s = read_semigroup(file)
    lam = parse_modulus(expression)
    levels = completion_trace(lam, s, current_limits())
    for index, level in enumerate(levels):
        console.print(f"[dim]level {index}:[/dim] {describe_complex(level)}")
    console.print(f"[green]✓ Stable after {len(levels) - 1} step(s)[/green]")
    emit(
        "complete",
        {"expression": expression, "file": str(file)},
        {
            "modulus": lam,
            "levels": levels,
            "steps": len(levels) - 1,
            "completion": levels[-1],
            "approximate": lam.is_approximate,
        },
    )


@cli.command()
@click.argument("expression")
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def points(expression, file):
    """Whether FILE is a point of the modulus EXPRESSION."""
    s = read_semigroup(file)
    lam = parse_modulus(expression)
    member = points_member(lam, s, current_limits())
    pv = points_pseudovariety(lam)
    if member:
        console.print(f"[green]✓ S is a point of {lam}[/green]")
    else:
        console.print(f"[yellow]✗ S is not a point of {lam}[/yellow]")
    emit(
        "points",
        {"expression": expression, "file": str(file)},
        {"member": member, "pseudovariety": pv.name if pv else None},
    )


def _bound(bound: Optional[int]) -> int:
    return bound if bound is not None else current_limits().default_oracle_bound


@cli.command()
@click.option("--pv", "pv_text", required=True, help="Pseudovariety id, e.g. aperiodic or nilpotent:2")
@click.option("--bound", type=click.IntRange(min=1), help="Largest codomain order tried (default: from config)")
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def oracle(pv_text, bound, file):
    """Upper bound for the pointlikes of FILE from small members of --pv."""
    s = read_semigroup(file)
    pv = PseudovarietyId.parse(pv_text)
    result = oracle_pointlikes(s, pv, _bound(bound), current_limits())
    console.print(
        f"[cyan]{pv.name}[/cyan] oracle: {result.codomains_used} codomains, "
        f"{result.graphs_intersected} graphs"
    )
    console.print(f"[cyan]Upper bound:[/cyan] {describe_complex(result.value)}")
    emit("oracle", {"pv": pv.name, "bound": result.codomain_bound, "file": str(file)}, result)


@cli.command()
@click.option("--pv", "pv_text", required=True, help="Pseudovariety id")
@click.option("--modulus", "expression", required=True, help="Modulus expression whose points contain --pv")
@click.option("--bound", type=click.IntRange(min=1), help="Largest codomain order tried (default: from config)")
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def certify(pv_text, expression, bound, file):
    """Squeeze the pointlikes of FILE between a modulus and the oracle."""
    s = read_semigroup(file)
    pv = PseudovarietyId.parse(pv_text)
    lam = parse_modulus(expression)
    certificate = certify_exact(s, pv, lam, _bound(bound), current_limits())
    console.print(f"[cyan]Lower:[/cyan] {describe_complex(certificate.lower)}")
    console.print(f"[cyan]Upper:[/cyan] {describe_complex(certificate.upper.value)}")
    if certificate.exact:
        console.print("[green]✓ Exact: lower and upper bounds agree[/green]")
    else:
        console.print("[yellow]✗ Not certified: the bounds differ[/yellow]")
    emit(
        "certify",
        {"pv": pv.name, "modulus": expression, "bound": certificate.upper.codomain_bound, "file": str(file)},
        certificate,
    )


@cli.command("enumerate")
@click.option("--order", type=click.IntRange(min=1), required=True, help="Order of the semigroups")
@click.option("--dedup", type=click.Choice([d.value for d in Dedup]), default=Dedup.UP_TO_ISO.value,
              show_default=True, help="Identify tables up to isomorphism, anti-isomorphism, or not at all")
@click.option("--filter", "pv_text", help="Keep only members of this pseudovariety")
@click.option("--tables", is_flag=True, help="Include the multiplication tables in the report")
@reported
def enumerate_command(order, dedup, pv_text, tables):
    """Count (and optionally list) the semigroups of a given order."""
    pv = PseudovarietyId.parse(pv_text) if pv_text else None
    found = [
        s for s in enumerate_semigroups(order, Dedup(dedup), current_limits())
        if pv is None or pv_member(pv, s)
    ]
    label = f" in {pv.name}" if pv else ""
    console.print(f"[green]✓ {len(found)} semigroups of order {order}{label} ({dedup})[/green]")
    result: Dict[str, Any] = {"count": len(found)}
    if tables:
        result["semigroups"] = found
    emit("enumerate", {"order": order, "dedup": dedup, "filter": pv.name if pv else None}, result)


@cli.command("check-laws")
@click.option("--order", type=click.IntRange(min=1), help="Largest order of the test universe (default: from config)")
@click.option("--suite", "suite_name", type=click.Choice(sorted(SUITES)), help="Run a single suite")
@click.pass_obj
@reported
def check_laws(obj, order, suite_name):
    """Run the property suites over all small semigroups."""
    order = order if order is not None else get_default_law_order(obj["config"])
    limits = obj["limits"]
    results = [run_suite(suite_name, order, limits)] if suite_name else run_all(order, limits)

    table = Table(title=f"Property suites (order ≤ {order})")
    table.add_column("Suite", style="cyan")
    table.add_column("Order", justify="right")
    table.add_column("Checks", justify="right")
    table.add_column("Result")
    for result in results:
        verdict = "[green]✓ pass[/green]" if result.passed else f"[red]✗ {len(result.violations)} violations[/red]"
        table.add_row(result.name, str(result.order), str(result.checked), verdict)
    console.print(table)

    passed = all(result.passed for result in results)
    emit("check-laws", {"order": order, "suite": suite_name}, {"suites": results, "passed": passed})
    if not passed:
        sys.exit(1)


@cli.command("reverse-check")
@click.option("--pv", "pv_text", required=True, help="Pseudovariety id")
@click.option("--bound", type=click.IntRange(min=1), help="Largest codomain order tried (default: from config)")
@click.argument("file", type=SEMIGROUP_FILE)
@reported
def reverse_check(pv_text, bound, file):
    """Compare the oracle for the reversed pseudovariety with the oracle at the reversed semigroup."""
    s = read_semigroup(file)
    pv = PseudovarietyId.parse(pv_text)
    k = _bound(bound)
    agrees = reversal_transfer_check(s, pv, k, current_limits())
    if agrees:
        console.print("[green]✓ Reversal transfer holds[/green]")
    else:
        console.print("[red]✗ Reversal transfer fails[/red]")
    emit(
        "reverse-check",
        {"pv": pv.name, "bound": k, "file": str(file)},
        {"pseudovariety": pv.name, "reversed": reversed_pseudovariety(pv).name, "agrees": agrees},
    )


def main():
    """Main entry point for the pointlike-lab CLI."""
    try:
        cli()
    except KeyboardInterrupt:
        console.print("\n[yellow]✗ Cancelled[/yellow]")
        sys.exit(130)
    except Exception as e:
        console.print(f"\n[red]✗ Unexpected error: {e}[/red]")
        logger.exception("Unexpected error in CLI")
        sys.exit(1)


if __name__ == "__main__":
    main()
