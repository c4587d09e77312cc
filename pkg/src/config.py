import os
from dataclasses import dataclass
from typing import Optional

from src.classes.finite_field import MAX_FIELD_ORDER
from src.errors import GuardrailError, ValidationError


DEFAULT_CACHE_DIR = ".sticklab_cache"
DEFAULT_TRUNCATION = 6
DEFAULT_LAURENT_PREC = 12

CARLITZ_COMMANDS = {"structure", "theta", "chi-theta", "fitting", "pro-fitting", "oracle"}
FILE_COMMANDS = {"fitting-general"}
PRIME_COMMANDS = CARLITZ_COMMANDS | {"interpolate"}


@dataclass
class JobConfig:
    """
    One command invocation with its resolved parameters.

    ``degree`` defaults to max(n * deg p + 2, 6) once the prime is parsed;
    it stays None here until then.
    """

    command: str
    q: Optional[int] = None
    prime: Optional[str] = None
    level: int = 1
    degree: Optional[int] = None
    truncation_m: int = DEFAULT_TRUNCATION
    laurent_prec: int = DEFAULT_LAURENT_PREC
    cover_file: Optional[str] = None
    out: Optional[str] = None
    workers: int = 1
    cache_dir: Optional[str] = None
    quick: bool = False
    verbosity: int = 0
    log_file: Optional[str] = None
    chi: Optional[str] = None
    y: Optional[str] = None
    x: Optional[str] = None
    j: Optional[int] = None

    @property
    def has_carlitz(self) -> bool:
        return self.q is not None or self.prime is not None

    def validate(self) -> "JobConfig":
        if self.command in PRIME_COMMANDS | {"goss"} and self.cover_file is not None:
            raise ValidationError(f"'{self.command}' takes Carlitz parameters, not --cover-file")
        if self.command in PRIME_COMMANDS and (self.q is None or self.prime is None):
            raise ValidationError(f"'{self.command}' needs --q and --prime")
        if self.command == "goss" and self.q is None:
            raise ValidationError("'goss' needs --q")
        if self.command in FILE_COMMANDS:
            if self.cover_file is None:
                raise ValidationError(f"'{self.command}' needs --cover-file")
            if self.has_carlitz:
                raise ValidationError("give either Carlitz parameters or --cover-file, not both")
        if self.q is not None and self.q > MAX_FIELD_ORDER:
            raise GuardrailError(f"q = {self.q} exceeds {MAX_FIELD_ORDER}")
        if self.level < 1:
            raise ValidationError(f"--level must be >= 1, got {self.level}")
        if self.degree is not None and self.degree < 1:
            raise ValidationError(f"--degree must be >= 1, got {self.degree}")
        if self.truncation_m < 1:
            raise ValidationError(f"--truncation-m must be >= 1, got {self.truncation_m}")
        if self.laurent_prec < 1:
            raise ValidationError(f"--laurent-prec must be >= 1, got {self.laurent_prec}")
        if self.workers < 1:
            raise ValidationError(f"--workers must be >= 1, got {self.workers}")
        return self

    def parameters(self) -> dict:
        """The flags that determine the result; the provenance block of every report."""
        out = {
            "q": self.q,
            "prime": self.prime,
            "level": self.level,
            "degree": self.degree,
            "truncation_m": self.truncation_m,
            "laurent_prec": self.laurent_prec,
            "cover_file": self.cover_file,
            "quick": self.quick,
        }
        for key in ("chi", "x", "y", "j"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def resolve_cache_dir(flag_value: Optional[str] = None) -> str:
    """STICKLAB_CACHE, then --cache-dir, then ./.sticklab_cache."""
    env = os.getenv("STICKLAB_CACHE")
    if env:
        return env
    if flag_value:
        return flag_value
    return os.path.join(os.getcwd(), DEFAULT_CACHE_DIR)
