"""
Command-line front end.

    python -m src blocks --case 2 --p 3 --n 3
    python -m src jantzen "2" "1,1" --e 2 --oracle
    python -m src verify --r-max 2 --n-max 4 --format table
    python -m src abacus "4,1,1|2|3,2,1" --e 3 --charges 0,1,2
    python -m src serve --port 8000

Results go to stdout; log records go to stderr. Exit codes: 0 success,
1 failed verification or internal assertion, 2 invalid configuration.
"""
import logging
import sys
from contextlib import contextmanager
from typing import Iterator, NoReturn, Optional

import typer

from src.api.config import ConfigError, RunConfig, SweepConfig
from src.api.payloads import (
    abacus_payload,
    blocks_payload,
    jantzen_payload,
    render,
    sweep_payload,
)
from src.core.blocks import blocks_by_jantzen, blocks_by_residue, cross_check_isomorphic_cases, verify_sweep, verify_theorem
from src.core.jantzen import jantzen_bruteforce, jantzen_fast
from src.core.orders import parse_order
from src.core.partition import parse_multipartition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

METHODS = ("both", "residue", "jantzen")

app = typer.Typer(
    help="Blocks of cyclotomic Hecke and Schur algebras, computed exactly.",
    no_args_is_help=True,
    add_completion=False,
)

# shared options
CaseOption = typer.Option("auto", "--case", help="1-5, or auto to derive it from e, p, r and --zero")
EOption = typer.Option(None, "--e", help="order of q: an integer >= 2 or inf")
POption = typer.Option(None, "--p", help="characteristic: a prime or inf")
ROption = typer.Option(1, "--r", help="number of components")
ChargesOption = typer.Option(None, "--charges", help="comma list of charges (case 1)")
ZeroOption = typer.Option(False, "--zero", help="every parameter Q_a is 0")
FormatOption = typer.Option("json", "--format", help="json or table")
SeedOption = typer.Option(0, "--seed", help="seed of the audit sample")
VerboseOption = typer.Option(False, "--verbose", "-v", help="debug logging on stderr")


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _fail(message: str, code: int) -> NoReturn:
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(code=code)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map contract violations to exit 2 and assertion failures to exit 1."""
    try:
        yield
    except AssertionError as err:
        logger.warning(f"Internal assertion failed: {err}")
        _fail(str(err) or "internal assertion failed", EXIT_FAILED)
    except ValueError as err:
        _fail(str(err), EXIT_CONFIG)


def _emit(kind: str, payload, output_format: str) -> None:
    typer.echo(render(kind, payload, output_format), nl=False)


@app.command()
def blocks(
    n: Optional[int] = typer.Option(None, "--n", help="size of the multipartitions"),
    method: str = typer.Option("both", "--method", help="both, residue or jantzen"),
    audit: bool = typer.Option(True, "--audit/--no-audit", help="cross-check a sample of the Jantzen matrix"),
    case: str = CaseOption,
    e: Optional[str] = EOption,
    p: Optional[str] = POption,
    r: int = ROption,
    charges: Optional[str] = ChargesOption,
    zero: bool = ZeroOption,
    output_format: str = FormatOption,
    seed: int = SeedOption,
    verbose: bool = VerboseOption,
):
    """Print the block partition of Lambda^+_{r,n}."""
    configure_logging(verbose)
    with exit_codes():
        cfg = RunConfig("blocks", e, p, r, n, charges, case, zero, output_format, seed)
        if method not in METHODS:
            raise ConfigError(f"method must be one of {', '.join(METHODS)}, got {method!r}")
        regime, n = cfg.regime(), cfg.require_n()
        if method == "residue":
            partition = blocks_by_residue(regime, n)
        elif method == "jantzen":
            partition = blocks_by_jantzen(regime, n, audit=audit, seed=seed)
        else:
            report = verify_theorem(regime, n, audit=audit, seed=seed)
            if not report.equal:
                left, right = report.witness_pair()
                raise AssertionError(
                    f"residue and Jantzen blocks differ at {regime.describe()} n={n}: "
                    f"witness [{left.literal()}] [{right.literal()}]"
                )
            partition = report.by_residue
        _emit("blocks", blocks_payload(regime, n, partition), output_format)


@app.command()
def jantzen(
    lam: str = typer.Argument(..., metavar="LAMBDA", help="multipartition literal, e.g. 4,1,1|2|3,2,1"),
    mu: str = typer.Argument(..., metavar="MU"),
    oracle: bool = typer.Option(False, "--oracle", help="also evaluate the defining sum"),
    case: str = CaseOption,
    e: Optional[str] = EOption,
    p: Optional[str] = POption,
    charges: Optional[str] = ChargesOption,
    zero: bool = ZeroOption,
    output_format: str = FormatOption,
    verbose: bool = VerboseOption,
):
    """Print the Jantzen coefficient J_{lambda mu}; r is read from LAMBDA."""
    configure_logging(verbose)
    with exit_codes():
        left = parse_multipartition(lam)
        right = parse_multipartition(mu, r=left.r)
        cfg = RunConfig("jantzen", e, p, left.r, left.size, charges, case, zero, output_format)
        regime = cfg.regime()
        value = jantzen_fast(left, right, regime, cfg.n)
        check = jantzen_bruteforce(left, right, regime, cfg.n) if oracle else None
        _emit("jantzen", jantzen_payload(regime, left, right, value, check), output_format)
    if oracle and check != value:
        raise typer.Exit(code=EXIT_FAILED)


@app.command()
def verify(
    r_max: int = typer.Option(3, "--r-max"),
    n_max: int = typer.Option(6, "--n-max"),
    e_list: str = typer.Option("2,3,4,inf", "--e-list"),
    p_list: str = typer.Option("2,3,inf", "--p-list"),
    cases: str = typer.Option("1,2,3,4,5", "--cases"),
    workers: int = typer.Option(1, "--workers", help="process pool size"),
    audit: bool = typer.Option(True, "--audit/--no-audit"),
    cross_check: bool = typer.Option(True, "--cross-check-34/--no-cross-check-34", help="compare cases 3 and 4"),
    output_format: str = FormatOption,
    seed: int = SeedOption,
    verbose: bool = VerboseOption,
):
    """Compare residue and Jantzen blocks over a grid of regimes."""
    configure_logging(verbose)
    with exit_codes():
        sweep = SweepConfig.from_strings(
            r_max, n_max, e_list, p_list, cases,
            workers=workers, audit=audit, cross_check=cross_check, seed=seed, output_format=output_format,
        )
        cells = sweep.cells()
        logger.info(f"Verifying {len(cells)} cells with {workers} worker(s)")
        reports = verify_sweep(cells, workers=sweep.workers, audit=sweep.audit, seed=sweep.seed)
        checks = [(q, r, n, cross_check_isomorphic_cases(q, r, n)) for q, r, n in sweep.cross_check_cells()]
        payload = sweep_payload(reports, checks)
        _emit("verify", payload, output_format)
    if not payload["passed"]:
        raise typer.Exit(code=EXIT_FAILED)


@app.command()
def abacus(
    lam: str = typer.Argument(..., metavar="LAMBDA"),
    e: str = typer.Option("inf", "--e", help="number of runners, or inf"),
    charges: Optional[str] = ChargesOption,
    rows: int = typer.Option(7, "--rows", help="rows drawn for finite e"),
    top_row: int = typer.Option(2, "--top-row"),
    output_format: str = FormatOption,
    verbose: bool = VerboseOption,
):
    """Draw the abacus of LAMBDA with its core, weights and hub."""
    configure_logging(verbose)
    with exit_codes():
        multi = parse_multipartition(lam)
        cfg = RunConfig("abacus", e, None, multi.r, multi.size, charges, "auto", False, output_format)
        charge_vector = cfg.charge_vector() or (0,) * multi.r
        if len(charge_vector) != multi.r:
            raise ConfigError(f"need {multi.r} charges, got {len(charge_vector)}")
        _emit("abacus", abacus_payload(multi, charge_vector, parse_order(e), rows, top_row), output_format)


@app.command()
def serve(
    host: str = typer.Option("127.0.0.1", "--host"),
    port: int = typer.Option(8000, "--port"),
    verbose: bool = VerboseOption,
):
    """Serve the same queries over HTTP and a verification websocket."""
    import uvicorn

    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO)
    uvicorn.run("src.api.blocks_server:app", host=host, port=port, log_level="debug" if verbose else "info")
