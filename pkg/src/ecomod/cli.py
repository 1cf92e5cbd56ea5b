"""Command-line front door.

Subcommands: validate, score, compile, run, batch, species, serve.
Exit codes: 0 success, 1 invalid input or model, 2 internal failure.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import codec
from .compiler import SimSettings, compile_model, emit_listing
from .engine import batch_run, run
from .errors import EcomodError, EngineInvariantError
from .export import series_csv, summary_csv, write_run_files
from .metrics import score_model
from .traits import RemoteTraitClient, TraitStore, bundled_store
from .validation import Severity, validate_model


def _load_model(path: str):
    return codec.decode_model(Path(path).read_text(encoding="utf-8"))


def _trait_backend(fixture: str | None, remote: str | None):
    if remote:
        return RemoteTraitClient(remote)
    if fixture:
        return TraitStore.from_fixture_file(fixture)
    return bundled_store()


@click.group()
def cli() -> None:
    """Ecosystem modeling workbench: validate, score, compile and run
    conceptual models, look up species traits, or serve the HTTP API."""


@cli.command()
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def validate(ctx: click.Context, model_file: str) -> None:
    """Check a model document; exit 0 only if it has no errors."""
    report = validate_model(_load_model(model_file))
    for issue in report.issues:
        tag = "ERROR" if issue.severity is Severity.ERROR else "WARNING"
        click.echo(f"{tag} {issue.code}: {issue.message}", err=True)
    if report.valid:
        click.echo(f"valid ({len(report.warnings())} warnings)")
    else:
        click.echo(f"invalid ({len(report.errors())} errors, {len(report.warnings())} warnings)")
        ctx.exit(1)


@cli.command()
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
def score(model_file: str) -> None:
    """Print the complexity and creativity scores."""
    scores = score_model(_load_model(model_file))
    click.echo(f"complexity: {scores.complexity}")
    click.echo(f"creativity: {scores.creativity}")


@cli.command(name="compile")
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
def compile_cmd(model_file: str) -> None:
    """Compile a model and print the rule listing."""
    program = compile_model(_load_model(model_file), SimSettings())
    click.echo(emit_listing(program), nl=False)


@cli.command(name="run")
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, required=True)
@click.option("--months", type=int, default=60, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="series CSV path [default: <model>.csv]")
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), default=None,
              help="also write a line chart")
def run_cmd(model_file: str, seed: int, months: int, out_path: str | None, svg_path: str | None) -> None:
    """Simulate one seeded run and write the series CSV."""
    program = compile_model(_load_model(model_file), SimSettings())
    result = run(program, seed=seed, duration=months)
    out = Path(out_path) if out_path else Path(model_file).with_suffix(".csv")
    write_run_files(result, out, svg_path)
    click.echo(f"wrote {out} ({months} months, seed {seed})")


def _parse_seeds(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in spec.split(",") if part.strip()]


@cli.command(name="batch")
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seeds", required=True, help="comma list (1,2,3) or range (1..100)")
@click.option("--months", type=int, default=60, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
def batch_cmd(model_file: str, seeds: str, months: int, out_dir: str) -> None:
    """Run many seeds; write per-seed CSVs plus an aggregate summary.csv."""
    seed_list = _parse_seeds(seeds)
    if not seed_list:
        raise click.UsageError("no seeds given")
    program = compile_model(_load_model(model_file), SimSettings())
    results, summary = batch_run(program, seed_list, months)
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for result in results:
        write_run_files(result, directory / f"seed-{result.seed}.csv")
    (directory / "summary.csv").write_text(summary_csv(summary), encoding="utf-8", newline="")
    click.echo(f"wrote {len(results)} runs + summary.csv to {directory}")


@cli.command(name="species")
@click.argument("query")
@click.option("--fixture", type=click.Path(exists=True, dir_okay=False), default=None,
              help="trait fixture JSON [default: bundled]")
@click.option("--remote", default=None, help="remote trait service base URL")
def species_cmd(query: str, fixture: str | None, remote: str | None) -> None:
    """Search the trait store and print matching taxa."""
    backend = _trait_backend(fixture, remote)
    records = backend.search_species(query)
    if not records:
        click.echo("no matches")
        return
    for record in records:
        commons = ", ".join(record.common_names) or "-"
        click.echo(
            f"{record.taxon_id}\t{record.scientific_name}\t{commons}\t"
            f"{record.attribute_record_count} records"
        )


@cli.command(name="serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--store-dir", type=click.Path(file_okay=False), default="ecomod-store", show_default=True)
@click.option("--trait-fixture", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--remote-traits", default=None, help="proxy species lookups to this base URL")
def serve_cmd(host: str, port: int, store_dir: str, trait_fixture: str | None, remote_traits: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(store_dir, _trait_backend(trait_fixture, remote_traits))
    uvicorn.run(app, host=host, port=port, log_level="info")


def main(argv: list[str] | None = None) -> int:
    try:
        # click returns the exit code itself when a command calls ctx.exit()
        result = cli.main(args=argv, standalone_mode=False)
        return result if isinstance(result, int) else 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except EngineInvariantError as exc:
        click.echo(f"engine invariant violated: {exc}", err=True)
        return 2
    except EcomodError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except Exception as exc:  # pragma: no cover - last resort
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
