from __future__ import annotations

from dataclasses import dataclass

from .ejint import InvalidModulus, Modulus

MODES = ("one2all", "all2all", "analytic", "topology", "compare")
ALGORITHMS = ("previous", "improved", "both")
FORMATS = ("csv", "json")

# networks with the same number of broadcast steps (12)
EQUAL_STEP_FAMILY = ((1, 2, 12), (2, 3, 6), (3, 4, 4), (4, 5, 3), (6, 7, 2))


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    alpha: tuple[int, int] = (3, 4)
    dims: int = 1
    algorithm: str = "improved"
    mode: str = "one2all"
    source: int = 0
    out: str | None = None
    format: str = "csv"

    @property
    def modulus(self) -> Modulus:
        return Modulus(*self.alpha)

    def validate(self) -> ExperimentConfig:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        try:
            m = self.modulus
        except InvalidModulus as e:
            raise ConfigError(str(e)) from None
        if self.dims < 1:
            raise ConfigError("--dims must be >= 1")
        if self.mode in ("one2all", "all2all", "analytic") and not m.is_broadcast_form:
            raise ConfigError(f"broadcast needs b = a+1, got alpha = {m}")
        if not 0 <= self.source < m.norm**self.dims:
            raise ConfigError(f"source {self.source} is not a node index")
        return self
