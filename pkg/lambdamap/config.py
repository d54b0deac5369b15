import logging
import os
from dataclasses import dataclass

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:  # pragma: no cover - optional dependency
    pass


DEFAULT_WORKERS = 1
DEFAULT_FOURCT_BUDGET = 11


@dataclass(frozen=True)
class Settings:
    workers: int = DEFAULT_WORKERS
    fourct_budget: int = DEFAULT_FOURCT_BUDGET


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(message)s")


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def load_settings() -> Settings:
    return Settings(
        workers=_positive_int("LAMBDAMAP_WORKERS", DEFAULT_WORKERS),
        fourct_budget=_positive_int("LAMBDAMAP_FOURCT_BUDGET", DEFAULT_FOURCT_BUDGET),
    )
