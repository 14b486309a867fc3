"""
Run configuration shared by the command line and the HTTP server.

Options arrive as strings (``--e 3``, ``?p=inf``) and are turned into a
validated ``Regime`` here, so both front ends reject the same inputs with the
same messages.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.core.blocks import DEFAULT_E_LIST, DEFAULT_P_LIST, theorem_grid
from src.core.orders import INF, Order, parse_order
from src.core.residue import CASES, Regime

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "table")
CASE_CHOICES = ("auto",) + tuple(str(case) for case in CASES)


class ConfigError(ValueError):
    """Options that cannot describe a run."""


def parse_charges(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(token) for token in text.split(",") if token.strip())
    except ValueError:
        raise ConfigError(f"charges must be a comma list of integers, got {text!r}") from None


def parse_order_list(text: str) -> Tuple[Order, ...]:
    try:
        return tuple(parse_order(token) for token in text.split(",") if token.strip())
    except ValueError as err:
        raise ConfigError(str(err)) from None


def parse_int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(token) for token in text.split(",") if token.strip())
    except ValueError:
        raise ConfigError(f"expected a comma list of integers, got {text!r}") from None


def _order_option(name: str, text: Optional[str]) -> Optional[Order]:
    if text is None:
        return None
    try:
        return parse_order(text)
    except ValueError as err:
        raise ConfigError(f"--{name}: {err}") from None


@dataclass
class RunConfig:
    """One query: which regime, which n, and how to print the answer."""
    subcommand: str = "blocks"
    e: Optional[str] = None
    p: Optional[str] = None
    r: int = 1
    n: Optional[int] = None
    charges: Optional[str] = None
    case: str = "auto"
    zero: bool = False
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        self.case = str(self.case).strip().lower()
        if self.case not in CASE_CHOICES:
            raise ConfigError(f"case must be one of {', '.join(CASE_CHOICES)}, got {self.case!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be json or table, got {self.output_format!r}")
        if self.r < 1:
            raise ConfigError(f"r must be >= 1, got {self.r}")
        if self.n is not None and self.n < 0:
            raise ConfigError(f"n must be non-negative, got {self.n}")

    def charge_vector(self) -> Optional[Tuple[int, ...]]:
        return parse_charges(self.charges) if self.charges is not None else None

    def regime(self) -> Regime:
        """Validated regime; RegimeError names the violated constraint."""
        e = _order_option("e", self.e)
        p = _order_option("p", self.p)
        charges = self.charge_vector()

        if self.case == "auto":
            if e is None:
                raise ConfigError("case auto requires --e")
            return Regime.derive(e, INF if p is None else p, self.r, charges, self.zero)

        case = int(self.case)
        if case in (2, 3, 4):
            if e is None and p is None:
                raise ConfigError(f"case {case} requires --p")
            e = p if e is None else e
            p = e if p is None else p
            return Regime(case, e, p, self.r, charges or ())
        if e is None:
            raise ConfigError(f"case {case} requires --e")
        p = INF if p is None else p
        if case == 1 and charges is None:
            charges = (0,) * self.r
        return Regime(case, e, p, self.r, charges or ())

    def require_n(self) -> int:
        if self.n is None:
            raise ConfigError(f"{self.subcommand} requires --n")
        return self.n


@dataclass
class SweepConfig:
    """Bounds of a verification sweep over the acceptance grid."""
    r_max: int = 3
    n_max: int = 6
    e_list: Tuple[Order, ...] = DEFAULT_E_LIST
    p_list: Tuple[Order, ...] = DEFAULT_P_LIST
    cases: Tuple[int, ...] = (1, 2, 3, 4, 5)
    workers: int = 1
    audit: bool = True
    cross_check: bool = True
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        if self.r_max < 1 or self.n_max < 0:
            raise ConfigError(f"need r_max >= 1 and n_max >= 0, got r_max={self.r_max}, n_max={self.n_max}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        unknown = [case for case in self.cases if case not in CASES]
        if unknown:
            raise ConfigError(f"unknown cases {unknown}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be json or table, got {self.output_format!r}")

    @classmethod
    def from_strings(
        cls,
        r_max: int = 3,
        n_max: int = 6,
        e_list: str = "2,3,4,inf",
        p_list: str = "2,3,inf",
        cases: str = "1,2,3,4,5",
        **options,
    ) -> "SweepConfig":
        return cls(
            r_max=r_max,
            n_max=n_max,
            e_list=parse_order_list(e_list),
            p_list=parse_order_list(p_list),
            cases=parse_int_list(cases),
            **options,
        )

    def cells(self) -> List[Tuple[Regime, int]]:
        cells = theorem_grid(self.r_max, self.n_max, self.e_list, self.p_list, self.cases)
        logger.debug(f"Sweep grid has {len(cells)} cells")
        return cells

    def cross_check_cells(self) -> List[Tuple[Order, int, int]]:
        """(p, r, n) triples at which cases 3 and 4 are compared."""
        if not self.cross_check or not {3, 4} <= set(self.cases):
            return []
        primes: Sequence[Order] = [p for p in self.p_list if p in self.e_list]
        return [(p, r, n) for p in primes for r in range(2, self.r_max + 1) for n in range(1, self.n_max + 1)]
