# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#
"""
Command-line interface for clonebelt.

Usage:
    clonebelt optimal 0 3.141592653589793        # UQCM belt
    clonebelt grid --steps 2                     # triangle of belts, row-major
    clonebelt curve --theta1 0.785398 --steps 360
    clonebelt profile --theta1 0 --theta2 1.5708 --steps 90
    clonebelt verify all --seed 7
"""

import logging
import math
import sys
from typing import Iterable, List, Type

import click
import numpy as np

from . import __version__
from .belt import make_belt
from .machine import fidelity_profile
from .records import (
    OutputRecord,
    ProfileRecord,
    encode_csv,
    encode_json,
    record_from_result,
    write_xlsx,
)
from .solver import optimal_fidelity_curve, optimal_fidelity_surface, solve_optimal
from .states import DomainError
from .verify import SUITE_NAMES, format_report, run_suite

__all__ = [
    "cli",
]

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def to_radians(value: float, degrees: bool) -> float:
    """Converts an angle argument; 180 degrees maps to pi exactly."""
    if not degrees:
        return value
    if value == 180.0:
        return math.pi
    return math.radians(value)


def emit_records(ctx: click.Context, records: Iterable, record_type: Type = OutputRecord) -> None:
    options = ctx.obj
    records = list(records)
    output = options["output"]

    if options["format"] == "xlsx":
        if output is None:
            raise click.UsageError("--format xlsx requires --output")
        write_xlsx(records, output, record_type)
        return

    if options["format"] == "json":
        text = encode_json(records, record_type)
    else:
        text = encode_csv(records, record_type)

    if output is None:
        click.echo(text, nl=False)
        return
    with open(output, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logging.debug(f"emit_records: {len(records)} record(s) --> {output}")


@click.group()
@click.version_option(version=__version__, prog_name="clonebelt")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json", "xlsx"]),
    default="csv",
    show_default=True,
    help="Record encoding (xlsx needs --output).",
)
@click.option("--degrees", is_flag=True, help="Read angle arguments in degrees instead of radians.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Write records to a file instead of standard output.")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Diagnostics on standard error.",
)
@click.pass_context
def cli(ctx: click.Context, fmt: str, degrees: bool, output: str | None, log_level: str):
    """
    Optimal symmetric 1 -> 2 cloning machines for latitude belts of the Bloch sphere.
    """
    logging.basicConfig(level=log_level.upper(), stream=sys.stderr, format="%(levelname)s %(message)s")
    ctx.obj = {"format": fmt, "degrees": degrees, "output": output}


@cli.command()
@click.argument("theta1", type=float)
@click.argument("theta2", type=float)
@click.pass_context
def optimal(ctx: click.Context, theta1: float, theta2: float):
    """Optimal machine for the belt THETA1 <= theta <= THETA2."""
    degrees = ctx.obj["degrees"]
    try:
        belt = make_belt(to_radians(theta1, degrees), to_radians(theta2, degrees))
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    emit_records(ctx, [record_from_result(solve_optimal(belt))])


@cli.command()
@click.option("--steps", type=click.IntRange(min=2), required=True, help="Steps per axis over [0, pi].")
@click.pass_context
def grid(ctx: click.Context, steps: int):
    """Every belt of the triangle 0 <= theta1 <= theta2 <= pi, row-major."""
    emit_records(ctx, (record_from_result(r) for r in optimal_fidelity_surface(steps)))


@cli.command()
@click.option("--theta1", type=float, required=True, help="Fixed lower belt edge.")
@click.option("--steps", type=click.IntRange(min=2), required=True, help="Increments of theta2 over [theta1, pi].")
@click.pass_context
def curve(ctx: click.Context, theta1: float, steps: int):
    """Optimal fidelity as the upper belt edge sweeps [THETA1, pi]."""
    try:
        results = optimal_fidelity_curve(to_radians(theta1, ctx.obj["degrees"]), steps)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    emit_records(ctx, (record_from_result(r) for r in results))


@cli.command()
@click.option("--theta1", type=float, required=True, help="Lower belt edge the machine is optimized for.")
@click.option("--theta2", type=float, required=True, help="Upper belt edge the machine is optimized for.")
@click.option("--steps", type=click.IntRange(min=2), default=180, show_default=True, help="Increments of theta over [0, pi].")
@click.pass_context
def profile(ctx: click.Context, theta1: float, theta2: float, steps: int):
    """Pointwise fidelity over [0, pi] of the machine optimal for one belt."""
    degrees = ctx.obj["degrees"]
    try:
        belt = make_belt(to_radians(theta1, degrees), to_radians(theta2, degrees))
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc

    angles = solve_optimal(belt).angles
    thetas = np.linspace(0.0, math.pi, steps + 1)
    fidelities = fidelity_profile(angles, thetas)
    records: List[ProfileRecord] = [
        ProfileRecord(theta=float(t), fidelity=float(f)) for t, f in zip(thetas, fidelities)
    ]
    emit_records(ctx, records, ProfileRecord)


@cli.command()
@click.argument("suite", type=click.Choice(list(SUITE_NAMES)))
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the randomized checks.")
@click.option("--quick", is_flag=True, help="Fewer random cases and smaller grids.")
def verify(suite: str, seed: int, quick: bool):
    """Run a verification suite and print a pass/fail table."""
    results = run_suite(suite, seed=seed, quick=quick)
    click.echo(format_report(results, seed), nl=False)
    if not all(r.passed for r in results):
        sys.exit(1)
