"""Configuration management for qsna."""

import os
from pathlib import Path
from typing import Literal, Optional, Tuple

import dotenv
from pydantic import BaseModel, Field, validator

from .harness.generator import GeneratorConfig


def get_config_dir() -> Path:
    """Get the configuration directory."""
    if os.name == "nt":  # Windows
        return Path(os.environ.get("APPDATA", "~")) / "qsna"
    return Path.home() / ".config" / "qsna"


def get_env_file_path() -> Path:
    """Get the path to the env file."""
    # Check project directory first
    project_env = Path(".") / ".env"
    if project_env.exists():
        return project_env
    # Fallback to default config directory
    return get_config_dir() / ".env"


def parse_range(text: str) -> Tuple[int, int]:
    """Parse ``"N"`` or ``"LO-HI"`` into an inclusive integer range."""
    low, sep, high = text.strip().partition("-")
    try:
        if not sep:
            return int(low), int(low)
        return int(low), int(high)
    except ValueError:
        raise ValueError(f"expected N or LO-HI, got {text!r}") from None


class Config(BaseModel):
    """qsna configuration."""

    seed: int = Field(default=0, ge=0, lt=2**64, description="Corpus seed")
    periods: Tuple[int, int] = Field(default=(1, 3), description="Horizon range of generated trees")
    dim: Tuple[int, int] = Field(default=(1, 2), description="Asset dimension range")
    labels: Tuple[int, int] = Field(default=(2, 3), description="Alphabet size range")
    generators: Tuple[int, int] = Field(default=(1, 3), description="Generators per node")
    denominator_bound: int = Field(default=4, ge=1)
    zero_mass_prob: float = Field(default=0.3, ge=0.0, le=1.0)
    instances: int = Field(default=50, ge=0, description="Harness corpus size")
    class_samples: int = Field(default=20, ge=1, description="Class members sampled per NA tree")
    format: Literal["json", "text"] = Field(default="json")

    @validator("periods", "dim", "labels", "generators", pre=True)
    def _parse_range(cls, value):
        if isinstance(value, str):
            return parse_range(value)
        return value

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables (after the env file)."""
        env_file = get_env_file_path()
        if env_file.exists():
            dotenv.load_dotenv(env_file, override=True)

        return cls(
            seed=int(os.getenv("QSNA_SEED", "0")),
            periods=os.getenv("QSNA_PERIODS", "1-3"),
            dim=os.getenv("QSNA_DIM", "1-2"),
            labels=os.getenv("QSNA_LABELS", "2-3"),
            generators=os.getenv("QSNA_GENERATORS", "1-3"),
            denominator_bound=int(os.getenv("QSNA_DENOMINATOR_BOUND", "4")),
            zero_mass_prob=float(os.getenv("QSNA_ZERO_MASS_PROB", "0.3")),
            instances=int(os.getenv("QSNA_INSTANCES", "50")),
            class_samples=int(os.getenv("QSNA_CLASS_SAMPLES", "20")),
            format=os.getenv("QSNA_FORMAT", "json"),
        )

    def generator_config(self, force_arbitrage: bool = False, **overrides) -> GeneratorConfig:
        """Harness generator settings; ``overrides`` take precedence (None is ignored)."""
        values = {
            "seed": self.seed,
            "periods": self.periods,
            "dims": self.dim,
            "labels": self.labels,
            "generators": self.generators,
            "denominator_bound": self.denominator_bound,
            "zero_mass_prob": self.zero_mass_prob,
            "force_arbitrage": force_arbitrage,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return GeneratorConfig(**values)


# Global config instance
_config: Optional[Config] = None


def get_config(reload: bool = False) -> Config:
    """Get or create global config instance."""
    global _config
    if _config is None or reload:
        _config = Config.from_env()
    return _config


def reload_config() -> Config:
    """Reload configuration from disk."""
    return get_config(reload=True)
