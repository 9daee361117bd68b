"""
stampkit CLI: exact postage-stamp and Frobenius computations.

Usage:
    stampkit nh --denoms 1,4,7,8 --h 3
    stampkit frobenius --denoms 6,10,15 --method brute-force
    stampkit bounds --denoms 1,4,7,8
    stampkit stabilize --denoms 1,11,13,16 --probes 1
    stampkit reduce --denoms 3,5 --verify --format json
    stampkit table --denoms 1,4,7,8 --h-max 3 --format csv
    stampkit check --random --count 25 --seed 7

Exit codes: 0 success, 1 domain error or failed check, 2 usage/parse error,
3 partial result (reduce --verify hit the table cap).
"""

import csv
import io
import json
import logging
import sys
from contextlib import contextmanager

import click
from pydantic import ValidationError

from . import __version__
from .batch import load_instances, random_instances, run_checks, summarize
from .config import get_settings
from .errors import IdentityViolationError, InstanceFileError, ResourceLimitError, StampkitError
from .frobenius import FrobeniusMethod, frobenius
from .lpsp import compute_n_h, n_h_by_binary_search, n_h_table
from .models import Basis, validate_basis
from .reduction import ReductionCertificate, build_reduction, verify_reduction
from .selmer import selmer_bounds, stabilization

logger = logging.getLogger(__name__)

EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3


class DenomsParamType(click.ParamType):
    """Comma-separated decimal integers. Order is kept as given."""

    name = "denoms"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        parts = [p.strip() for p in str(value).split(",")]
        try:
            return [int(p, 10) for p in parts]
        except ValueError:
            self.fail(f"expected comma-separated integers, got {value!r}", param, ctx)


DENOMS = DenomsParamType()

_denoms_option = click.option("--denoms", "-d", type=DENOMS, required=True, help="Denominations, e.g. 1,4,7,8")


def _format_option(*choices: str):
    return click.option(
        "--format", "fmt", type=click.Choice(list(choices)), default="text", show_default=True, help="Output format"
    )


def _fail(error: StampkitError, code: int = EXIT_DOMAIN):
    click.echo(f"Error: {error.name}: {error}", err=True)
    sys.exit(code)


@contextmanager
def _domain_errors():
    """Turn stampkit errors into a diagnostic and exit status 1."""
    try:
        yield
    except StampkitError as e:
        _fail(e)


def _basis(denoms: list[int]) -> Basis:
    with _domain_errors():
        return validate_basis(denoms)


def _echo_json(data) -> None:
    click.echo(json.dumps(data, indent=2))


def _max_table(ctx: click.Context) -> int | None:
    return ctx.obj.get("max_table") if ctx.obj else None


@click.group()
@click.version_option(version=__version__, prog_name="stampkit")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
@click.option("--max-table", type=click.IntRange(min=1), default=None, help="Table entry cap (overrides STAMPKIT_MAX_TABLE)")
@click.pass_context
def cli(ctx, verbose, max_table):
    """Exact solvers for N_h(a_1..a_k) and the Frobenius number g(a_1..a_k)."""
    try:
        settings = get_settings()
    except ValidationError as e:
        click.echo(f"Error: invalid STAMPKIT_* configuration: {e}", err=True)
        sys.exit(EXIT_USAGE)

    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    ctx.ensure_object(dict)
    ctx.obj["max_table"] = max_table


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


@cli.command()
@_denoms_option
@click.option("--h", "h", type=click.IntRange(min=1), required=True, help="Maximum number of stamps")
@click.option("--method", type=click.Choice(["table", "bisect"]), default="table", show_default=True)
@_format_option("text", "json")
@click.pass_context
def nh(ctx, denoms, h, method, fmt):
    """Smallest amount not payable with at most h stamps."""
    basis = _basis(denoms)
    with _domain_errors():
        result = compute_n_h(basis, h, max_table=_max_table(ctx))
        if method == "bisect":
            bisected = n_h_by_binary_search(basis, h, max_table=_max_table(ctx))
            if bisected != result.n_h:
                raise IdentityViolationError(f"bisection gave {bisected}, table gave {result.n_h}")

    if fmt == "json":
        _echo_json({**result.to_dict(), "method": method})
        return

    click.echo(f"N_{h}({basis}) = {result.n_h}")
    witness = result.witness_below
    click.echo(f"  {result.n_h - 1} = {_describe(witness.coeffs, basis)} (weight {witness.weight})")
    click.echo(f"  minimum weight of {result.n_h} is {result.min_weight_at_n_h} > {h}")


def _describe(coeffs, basis: Basis) -> str:
    terms = [f"{x}*{d}" for x, d in zip(coeffs, basis.denoms) if x]
    return " + ".join(terms) if terms else "0"


@cli.command(name="frobenius")
@_denoms_option
@click.option(
    "--method",
    type=click.Choice([m.value for m in FrobeniusMethod]),
    default=FrobeniusMethod.RESIDUE_GRAPH.value,
    show_default=True,
)
@_format_option("text", "json")
@click.pass_context
def frobenius_cmd(ctx, denoms, method, fmt):
    """Largest integer that is not a non-negative combination of the denominations."""
    basis = _basis(denoms)
    with _domain_errors():
        result = frobenius(basis, FrobeniusMethod(method), max_table=_max_table(ctx))

    if fmt == "json":
        _echo_json(result.to_dict())
    else:
        click.echo(f"g({basis}) = {result.g}")


@cli.command()
@_denoms_option
@_format_option("text", "json")
def bounds(denoms, fmt):
    """Stabilization thresholds h0 and h1."""
    basis = _basis(denoms)
    with _domain_errors():
        result = selmer_bounds(basis)

    if fmt == "json":
        _echo_json(result.to_dict())
    else:
        click.echo(f"h0 = {result.h0}")
        click.echo(f"h1 = {result.h1}")


@cli.command()
@_denoms_option
@click.option("--probes", type=click.IntRange(min=0), default=None, help="Extra h values past h1 [default: 4]")
@_format_option("text", "json")
@click.pass_context
def stabilize(ctx, denoms, probes, fmt):
    """Certify h*a_k - N_h = c for h >= h1 and c = g(complement basis)."""
    basis = _basis(denoms)
    with _domain_errors():
        cert = stabilization(basis, probes, max_table=_max_table(ctx))

    if fmt == "json":
        _echo_json(cert.to_dict())
        return

    lo, hi = cert.checked_h_range
    click.echo(f"h0 = {cert.bounds.h0}")
    click.echo(f"h1 = {cert.bounds.h1}")
    click.echo(f"c = {cert.c}")
    click.echo(f"complement = {cert.complement}")
    click.echo(f"g(complement) = {cert.g_complement}")
    click.echo(f"checked h = {lo}..{hi}: N_h = {basis.largest}h - ({cert.c})")
    click.echo(f"onset = {cert.onset}")


@cli.command()
@_denoms_option
@click.option("--verify", is_flag=True, help="Run the DP and Frobenius solvers to check the identity")
@_format_option("text", "json")
@click.pass_context
def reduce(ctx, denoms, verify, fmt):
    """Build the LPSP instance whose N_h determines g(denoms)."""
    basis = _basis(denoms)
    with _domain_errors():
        cert = build_reduction(basis)

    partial = None
    if verify:
        try:
            cert = verify_reduction(cert, max_table=_max_table(ctx))
        except ResourceLimitError as e:
            partial = e
        except StampkitError as e:
            _fail(e)

    _print_reduction(cert, fmt)
    if partial is not None:
        _fail(partial, EXIT_PARTIAL)


def _print_reduction(cert: ReductionCertificate, fmt: str) -> None:
    if fmt == "json":
        _echo_json(cert.to_dict())
        return
    click.echo(f"b = {cert.b}")
    click.echo(f"b_extended = {cert.b_extended}")
    click.echo(f"basis = {cert.lpsp_basis}")
    click.echo(f"h = {cert.h}")
    if cert.verified:
        click.echo(f"N_h = {cert.n_h}")
        click.echo(f"identity holds: {cert.h}*{cert.top} - {cert.n_h} = {cert.predicted_g}")
        click.echo(f"g = {cert.g}")
    else:
        click.echo("verified = false")


@cli.command()
@_denoms_option
@click.option("--h-max", type=click.IntRange(min=1), required=True)
@_format_option("text", "csv", "json")
@click.pass_context
def table(ctx, denoms, h_max, fmt):
    """N_h for h = 1..h_max with the step to the next row."""
    basis = _basis(denoms)
    with _domain_errors():
        rows = n_h_table(basis, h_max, max_table=_max_table(ctx))

    if fmt == "json":
        _echo_json({"denoms": list(basis.denoms), "rows": [row._asdict() for row in rows]})
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["h", "n_h", "delta"])
        for row in rows:
            writer.writerow([row.h, row.n_h, "" if row.delta is None else row.delta])
        click.echo(buf.getvalue(), nl=False)
    else:
        width = max(len(str(row.n_h)) for row in rows)
        for row in rows:
            delta = "" if row.delta is None else f"  +{row.delta}"
            click.echo(f"  N_{row.h:<4} = {row.n_h:>{width}}{delta}")


# ---------------------------------------------------------------------------
# Batch checks
# ---------------------------------------------------------------------------


@cli.command()
@click.option("--instances", type=click.Path(dir_okay=False), default=None, help="JSON-lines instance file")
@click.option("--random", "use_random", is_flag=True, help="Generate seeded random instances")
@click.option("--count", type=click.IntRange(min=0), default=25, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Concurrent checks [default: STAMPKIT_WORKERS]")
@click.option("--i-max", type=click.IntRange(min=0), default=None, help="Window past h0 and h1 [default: STAMPKIT_LEMMA_I_MAX]")
@_format_option("text", "json")
@click.pass_context
def check(ctx, instances, use_random, count, seed, workers, i_max, fmt):
    """Verify the stabilization claims and the reduction over many instances."""
    if bool(instances) == use_random:
        raise click.UsageError("give exactly one of --instances FILE or --random")

    settings = get_settings()
    if use_random:
        records = random_instances(seed, count)
    else:
        try:
            records = load_instances(instances)
        except InstanceFileError as e:
            _fail(e, EXIT_USAGE)

    outcomes = run_checks(
        records,
        workers=workers or settings.workers,
        i_max=settings.lemma_i_max if i_max is None else i_max,
        max_table=_max_table(ctx),
    )
    summary = summarize(outcomes)

    if fmt == "json":
        _echo_json({"results": [o.to_dict() for o in outcomes], "summary": summary})
    else:
        for outcome in outcomes:
            click.echo(json.dumps(outcome.to_dict()))
        click.echo(json.dumps({"summary": summary}))

    if summary["failed"]:
        sys.exit(EXIT_DOMAIN)


if __name__ == "__main__":
    cli()
