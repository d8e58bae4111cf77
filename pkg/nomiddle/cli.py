"""Command-line interface for the middle-class classifier."""

import logging
from pathlib import Path
from typing import Optional

import click
import structlog

from .config import MAX_HOM_CANDIDATES, MAX_MODULE_SIZE, MAX_RING_SIZE, SEED, THREADS
from .errors import BoundExceeded, NoMiddleError, SpecSemanticError, SpecSyntaxError
from .models import Bounds, Command, OutputFormat, Verb
from .pipeline import run
from .utils import emit_report


def configure_logging(verbose: bool = False) -> None:
    renderer = structlog.dev.ConsoleRenderer() if verbose else structlog.processors.JSONRenderer()
    if verbose:
        logging.basicConfig(level=logging.INFO)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


configure_logging()

log = structlog.get_logger()


class SyntaxFailure(click.ClickException):
    exit_code = 2


class BoundFailure(click.ClickException):
    exit_code = 3


class SemanticFailure(click.ClickException):
    exit_code = 4


@click.command()
@click.argument("verb", type=click.Choice([v.value for v in Verb]))
@click.argument("spec")
@click.option(
    "--format", "fmt",
    type=click.Choice([f.value for f in OutputFormat]),
    default=OutputFormat.TEXT.value,
    help="Report format"
)
@click.option("--max-ring-size", type=click.IntRange(min=1), default=MAX_RING_SIZE, help="Largest ring to build")
@click.option("--max-module-size", type=click.IntRange(min=1), default=MAX_MODULE_SIZE, help="Largest module in witness search")
@click.option(
    "--max-hom-candidates",
    type=click.IntRange(min=1),
    default=MAX_HOM_CANDIDATES,
    help="Cap on partial maps explored per hom enumeration"
)
@click.option("--threads", type=click.IntRange(min=1), default=THREADS, help="Worker threads for report sections")
@click.option("--seed", type=int, default=SEED, help="Seed for sampled checks")
@click.option(
    "--bimodule",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="JSON side file {\"hom\": [...]} giving the ring map of a trimat recipe"
)
@click.option("--timings", is_flag=True, help="Include stage timings in the report")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
def main(
    verb: str,
    spec: str,
    fmt: str,
    max_ring_size: int,
    max_module_size: int,
    max_hom_candidates: int,
    threads: int,
    seed: int,
    bimodule: Optional[Path],
    timings: bool,
    verbose: bool,
):
    """Decide whether the finite ring SPEC has a (simple) middle class.

    SPEC is a ring recipe such as "zmod(8)" or "tri(gf(3);2;gen[[1,2],[1,1]])",
    or @FILE to read it from a file.
    """
    if verbose:
        configure_logging(verbose=True)

    command = Command(
        verb=Verb(verb),
        spec=spec,
        bounds=Bounds(
            max_ring_size=max_ring_size,
            max_module_size=max_module_size,
            max_hom_candidates=max_hom_candidates,
        ),
        format=OutputFormat(fmt),
        seed=seed,
        threads=threads,
        bimodule=bimodule,
        timings=timings,
    )
    log.info("Starting classifier", verb=verb, spec=spec, bounds=command.bounds.model_dump(), threads=threads)

    try:
        report = run(command)
    except SpecSyntaxError as e:
        log.error("Spec does not parse", error=str(e), position=e.position)
        raise SyntaxFailure(str(e))
    except SpecSemanticError as e:
        log.error("Spec is not a valid ring", error=str(e))
        raise SemanticFailure(str(e))
    except BoundExceeded as e:
        log.error("Bound exhausted before any verdict", what=e.what, limit=e.limit, needed=e.needed)
        raise BoundFailure(str(e))
    except (NoMiddleError, OSError) as e:
        log.error("Processing failed", error=str(e))
        raise click.ClickException(str(e))

    click.echo(emit_report(report, command.format, timings=timings))


if __name__ == "__main__":
    main()
