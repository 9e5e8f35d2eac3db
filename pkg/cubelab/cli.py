"""
Command line entry point.

stdout carries machine JSON only; ``--verbose`` summaries go to stderr. Exit code 0 means the property holds, 1 that
it fails with a witness and 2 that the input could not be used.
"""
import functools
import sys

import click
import jsonlines
import jsonschema
import yaml
from tabulate import tabulate

from cubelab.environment.constants import EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT_ERROR, VERBOSE
from cubelab.environment.instance import Instance
from cubelab.environment.utils import dump_json, jsonify
from cubelab.cubes.cube import NCube, is_n_cubic_extension
from cubelab.cubes.distributivity import check_distributive
from cubelab.cubes.io import load_artifact, load_instance, load_search_spec
from cubelab.cubes.render import to_dot
from cubelab.cubes.sequence import (
    NSequence, build_sequence_pointed, build_sequence_kernels, build_fork_diagram, verify_sequence,
)
from cubelab.cubes.theorems import equivalence_theorem_check
from cubelab.oracle.search import search as run_search

INPUT_ERRORS = (ValueError, KeyError, jsonschema.ValidationError, yaml.YAMLError, OSError)


def _input_errors(command):
    """Turns malformed input into exit code 2 with the message on stderr."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except INPUT_ERRORS as e:
            click.echo("error: {}".format(e), err=True)
            sys.exit(EXIT_INPUT_ERROR)

    return wrapper


def _emit(contents, output=None):
    text = dump_json(contents)
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w") as f:
            f.write(text)


def _summarize(ctx, title, report):
    if not ctx.obj[VERBOSE]:
        return
    click.echo("{}: {}".format(title, "holds" if report.verdict else "fails"), err=True)
    rows = [[entry.get("check", entry.get("line", "")), entry.get("holds", entry.get("exact", entry.get("verdict")))]
            for entry in report.trace]
    if rows:
        click.echo(tabulate(rows, headers=["check", "result"]), err=True)
    for defect in report.defects:
        click.echo("defect: {}".format(defect), err=True)


def _verdict(report):
    sys.exit(EXIT_HOLDS if report.verdict else EXIT_FAILS)


def _as_cube(artifact):
    if isinstance(artifact, Instance):
        return artifact.cube
    if isinstance(artifact, NCube):
        return artifact
    raise ValueError("Expected a cube or an instance, got {}".format(type(artifact).__name__))


@click.group()
@click.option("--verbose", is_flag=True, help="Human-readable summaries on stderr")
@click.option("--jobs", default=1, type=click.IntRange(min=1), help="Parallel shards for search")
@click.option("--seed", default=None, type=click.IntRange(min=0), help="Seed overriding the search spec's")
@click.option("--log-dir", default=None, type=click.Path(file_okay=False), help="Directory for JSON lines logs")
@click.pass_context
def cli(ctx, verbose, jobs, seed, log_dir):
    """Cubes of relations, their extensions and the distributivity of relation tuples."""
    ctx.ensure_object(dict)
    ctx.obj[VERBOSE] = verbose
    ctx.obj["jobs"] = jobs
    ctx.obj["seed"] = seed
    ctx.obj["log_dir"] = log_dir


@cli.command("check-distributive")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--n-override", default=None, type=int, help="Keep only the first N relations")
@click.pass_context
@_input_errors
def check_distributive_command(ctx, file, n_override):
    """Checks whether the relations of an instance file form a distributive tuple."""
    instance = load_instance(file, n_override=n_override)
    report = check_distributive(instance.relations, instance.context.lattice)
    _emit(report.to_json())
    _summarize(ctx, "distributive", report)
    _verdict(report)


@cli.command("build-cube")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--n-override", default=None, type=int, help="Keep only the first N relations")
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False), help="Write the cube here")
@_input_errors
def build_cube_command(file, n_override, output):
    """Builds the cube induced by the relations of an instance file."""
    instance = load_instance(file, n_override=n_override)
    _emit(instance.cube.to_json(), output)


@cli.command("check-extension")
@click.argument("artifact", type=click.Path(exists=True, dir_okay=False))
@click.option("--n-override", default=None, type=int, help="Keep only the first N relations")
@click.pass_context
@_input_errors
def check_extension_command(ctx, artifact, n_override):
    """Checks whether a cube, or the cube induced by an instance, is an n-cubic extension."""
    cube = _as_cube(load_artifact(artifact, n_override=n_override))
    report = is_n_cubic_extension(cube)
    _emit(report.to_json())
    _summarize(ctx, "extension", report)
    _verdict(report)


@cli.command("build-diagram")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--pointed", "mode", flag_value="pointed", default=True, help="Kernel and cokernel lines")
@click.option("--kernels", "mode", flag_value="kernels", help="Pointed grid built from kernels of the cube")
@click.option("--fork", "mode", flag_value="fork", help="Kernel pair forks over the cube")
@click.option("--n-override", default=None, type=int, help="Keep only the first N relations")
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False), help="Write the grid here")
@_input_errors
def build_diagram_command(file, mode, n_override, output):
    """Builds the 3^n grid of an instance file."""
    instance = load_instance(file, n_override=n_override)
    builders = {
        "pointed": build_sequence_pointed,
        "kernels": build_sequence_kernels,
        "fork": build_fork_diagram,
    }
    grid = builders[mode](instance.context, instance.base, instance.relations)
    _emit(grid.to_json(), output)


@cli.command("verify-diagram")
@click.argument("grid", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@_input_errors
def verify_diagram_command(ctx, grid):
    """Checks every line of a grid for exactness."""
    artifact = load_artifact(grid)
    if not isinstance(artifact, NSequence):
        raise ValueError("Expected a grid document in {}".format(grid))
    report = verify_sequence(artifact)
    _emit(report.to_json())
    _summarize(ctx, "exact", report)
    _verdict(report)


@cli.command("check-theorem")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--n-override", default=None, type=int, help="Keep only the first N relations")
@click.pass_context
@_input_errors
def check_theorem_command(ctx, file, n_override):
    """Runs every characterisation of distributivity and checks they agree."""
    instance = load_instance(file, n_override=n_override)
    report = equivalence_theorem_check(instance.context, instance.base, instance)
    _emit(report.to_json())
    _summarize(ctx, "characterisations agree", report)
    sys.exit(EXIT_FAILS if report.defects else EXIT_HOLDS)


@cli.command("search")
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@_input_errors
def search_command(ctx, spec):
    """Searches an instance space for witnesses of a predicate, streaming them as JSON lines."""
    overrides = {} if ctx.obj["seed"] is None else {"seed": ctx.obj["seed"]}
    search_spec = load_search_spec(spec, overrides=overrides)
    witnesses = run_search(search_spec, jobs=ctx.obj["jobs"], log_dir=ctx.obj["log_dir"], progress=ctx.obj[VERBOSE])
    writer = jsonlines.Writer(sys.stdout, sort_keys=True, flush=True)
    for witness in witnesses:
        writer.write(jsonify(witness))
    if ctx.obj[VERBOSE]:
        click.echo("{} witnesses for {}".format(len(witnesses), search_spec.predicate_name), err=True)
    sys.exit(EXIT_HOLDS if witnesses else EXIT_FAILS)


@cli.command("export-dot")
@click.argument("artifact", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default=None, type=click.Path(dir_okay=False), help="Write the DOT source here")
@_input_errors
def export_dot_command(artifact, output):
    """Renders a cube, grid or the cube of an instance as DOT."""
    loaded = load_artifact(artifact)
    text = to_dot(loaded.cube if isinstance(loaded, Instance) else loaded)
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w") as f:
            f.write(text)


def main():
    cli(obj={})


if __name__ == "__main__":
    main()
