"""Campaign definitions and their JSON config form."""

import json
from dataclasses import dataclass, field

from ..errors import ConfigError
from .schedule import GridSchedule, number, schedule_from_config

#: Condition kinds and the extra scalars each one requires.
KIND_EXTRAS = {
    "C1_density": (),
    "C2_wdr": (),
    "C3a_chi_grid": (),
    "C3b_tail": (),
    "C4a_psi_grid": (),
    "C4b_wsg_tail": (),
    "C5_vsg": (),
    "MONSTER_C2": (),
    "MONSTER_C3_grid": (),
    "MONSTER_TAIL": (),
    "DRILL_VAD": ("delta", "eta", "v_cusped"),
    "DRILL_WDR_POINT": ("radius", "mu0"),
}


@dataclass
class ConditionSpec:
    """One block of inequalities.

    ``threshold`` overrides the campaign v0 for this block; ``mu`` replaces the
    schedule's mu on every cell; ``index_ranges`` restricts each index axis to
    an inclusive ``(lo, hi)`` range (default: the full range).
    """

    kind: str
    condition_id: str = ""
    extra: dict = field(default_factory=dict)
    threshold: float | None = None
    mu: float | None = None
    index_ranges: tuple | None = None

    def __post_init__(self):
        if self.kind not in KIND_EXTRAS:
            raise ConfigError(f"unknown condition kind {self.kind!r}")
        missing = [name for name in KIND_EXTRAS[self.kind] if name not in self.extra]
        if missing:
            raise ConfigError(f"{self.kind} needs extra scalars {missing}")
        if not self.condition_id:
            self.condition_id = self.kind


@dataclass
class Campaign:
    label: str
    k: int
    v0: float
    schedule: GridSchedule
    blocks: list

    def __post_init__(self):
        if self.k < 4:
            raise ConfigError(f"k must be at least 4, got {self.k}")
        if not self.v0 > 0.0:
            raise ConfigError(f"v0 must be positive, got {self.v0}")
        ids = [b.condition_id for b in self.blocks]
        if len(set(ids)) != len(ids):
            raise ConfigError("condition ids must be unique")

    def with_v0_shift(self, shift):
        """Copy with v0 and every explicit block threshold raised by ``shift``."""
        blocks = [ConditionSpec(b.kind, b.condition_id, dict(b.extra),
                                None if b.threshold is None else b.threshold + shift,
                                b.mu, b.index_ranges)
                  for b in self.blocks]
        return Campaign(self.label, self.k, self.v0 + shift, self.schedule, blocks)


_BLOCK_KEYS = {"kind", "id", "threshold", "mu", "index_ranges"}


def _block_from_config(cfg):
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise ConfigError("each block needs a 'kind'")
    extra = {key: number(val) for key, val in cfg.items() if key not in _BLOCK_KEYS}
    ranges = cfg.get("index_ranges")
    if ranges is not None:
        try:
            ranges = tuple((int(lo), int(hi)) for lo, hi in ranges)
        except (TypeError, ValueError):
            raise ConfigError("index_ranges must be a list of [lo, hi] pairs") from None
    return ConditionSpec(
        kind=cfg["kind"],
        condition_id=str(cfg.get("id", "")),
        extra=extra,
        threshold=None if cfg.get("threshold") is None else number(cfg["threshold"]),
        mu=None if cfg.get("mu") is None else number(cfg["mu"]),
        index_ranges=ranges,
    )


def campaign_from_config(cfg):
    """Build a Campaign from a parsed config object."""
    if not isinstance(cfg, dict):
        raise ConfigError("campaign config must be an object")
    for key in ("label", "k", "v0", "schedule", "blocks"):
        if key not in cfg:
            raise ConfigError(f"campaign config is missing {key!r}")
    if not isinstance(cfg["blocks"], list) or not cfg["blocks"]:
        raise ConfigError("blocks must be a non-empty list")
    try:
        k = int(cfg["k"])
    except (TypeError, ValueError):
        raise ConfigError("k must be an integer") from None
    return Campaign(
        label=str(cfg["label"]),
        k=k,
        v0=number(cfg["v0"]),
        schedule=schedule_from_config(cfg["schedule"]),
        blocks=[_block_from_config(b) for b in cfg["blocks"]],
    )


def load_campaign(path):
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    return campaign_from_config(cfg)
