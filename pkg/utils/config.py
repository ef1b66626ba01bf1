import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from core.errors import PreconditionError
from core.gf_core import FieldSpec, default_field, prime_power

# ================= DEFAULTS =================
load_dotenv()

DEFAULT_GUARD = int(os.getenv("SELFDUAL_GUARD", str(2 ** 24)))
DEFAULT_JOBS = int(os.getenv("SELFDUAL_JOBS", "1"))
DEFAULT_FORMAT = os.getenv("SELFDUAL_FORMAT", "json")
DEFAULT_LOG_LEVEL = os.getenv("SELFDUAL_LOG_LEVEL", "WARNING")

FORMATS = ("json", "csv", "text")


def parse_modulus(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    """'1,1,0,1' -> (1, 1, 0, 1), lowest degree first."""
    if not text:
        return None
    try:
        return tuple(int(c.strip()) for c in text.split(","))
    except ValueError:
        raise PreconditionError(f"--modulus expects comma-separated integers, got {text!r}") from None


def parse_range(text: Optional[str], name: str) -> List[int]:
    """
    'a', 'a:b' or 'a:b:step' (inclusive bounds). Open ends such as 'a:' are
    refused; an empty range is allowed.
    """
    if text is None:
        raise PreconditionError(f"--{name} is required")
    parts = text.split(":")
    if len(parts) > 3 or any(p.strip() == "" for p in parts):
        raise PreconditionError(f"--{name} must be a bounded range a[:b[:step]], got {text!r}")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise PreconditionError(f"--{name} must contain integers, got {text!r}") from None
    if len(values) == 1:
        return values
    start, stop = values[0], values[1]
    step = values[2] if len(values) == 3 else 1
    if step < 1:
        raise PreconditionError(f"--{name} step must be positive, got {step}")
    return list(range(start, stop + 1, step))


@dataclass
class RunConfig:
    command: str
    q: Optional[int] = None
    p: Optional[int] = None
    m: Optional[int] = None
    modulus: Optional[Tuple[int, ...]] = None
    n: Optional[int] = None
    r: Optional[int] = None
    d: Optional[int] = None
    case: Optional[str] = None
    format: str = DEFAULT_FORMAT
    guard: int = DEFAULT_GUARD
    strict: bool = False
    meta: bool = True
    jobs: int = DEFAULT_JOBS
    rho_g: List[int] = field(default_factory=list)
    rho_h: List[int] = field(default_factory=list)
    rho_hh: Optional[int] = None
    ranges: dict = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, args) -> "RunConfig":
        raw = vars(args)
        config = cls(command=raw["command"])
        scalars = ("q", "p", "m", "n", "r", "d", "case", "format", "guard", "strict", "jobs")
        if config.command == "table":
            config.ranges = {name: raw.get(name) for name in ("q", "n", "r")}
            scalars = ("format", "guard", "strict", "jobs")
        for name in scalars:
            value = raw.get(name)
            if value is not None:
                setattr(config, name, value)
        config.modulus = parse_modulus(raw.get("modulus"))
        config.meta = not raw.get("no_meta", False)
        config.rho_g = list(raw.get("rho_g") or [])
        config.rho_h = list(raw.get("rho_h") or [])
        config.rho_hh = raw.get("rho_hh")
        return config

    def field_params(self) -> Tuple[int, int]:
        """
        (p, m) of the base field from --q or from --p/--m. For qc, --m is the
        co-index of the quasi-cyclic code instead.
        """
        field_m = None if self.command == "qc" else self.m
        if self.q is not None:
            p, m = prime_power(self.q)
            if (self.p is not None and self.p != p) or (field_m is not None and field_m != m):
                raise PreconditionError(f"q={self.q} is not {self.p or p}^{field_m or m}")
            return p, m
        if self.p is None:
            raise PreconditionError("give the field as --q or as --p with --m")
        return self.p, field_m or 1

    def field_spec(self) -> FieldSpec:
        p, m = self.field_params()
        if self.modulus is None:
            return default_field(p, m)
        return FieldSpec(p, m, self.modulus)

    def validate(self) -> "RunConfig":
        if self.format not in FORMATS:
            raise PreconditionError(f"--format must be one of {', '.join(FORMATS)}")
        if self.guard < 0:
            raise PreconditionError(f"--guard must be >= 0, got {self.guard}")
        if self.jobs < 1:
            raise PreconditionError(f"--jobs must be >= 1, got {self.jobs}")
        for name in ("n", "d"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise PreconditionError(f"--{name} must be >= 1, got {value}")
        if self.command == "table":
            return self
        if self.q is not None or self.p is not None:
            _, m = self.field_params()
            if self.r is not None and not 1 <= self.r <= m:
                raise PreconditionError(f"--r must lie in [1, {m}], got {self.r}")
        return self
