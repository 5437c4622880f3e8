"""Tolerances and limits shared by every numerical routine.

A single :class:`Config` value is threaded explicitly through the library;
nothing reads module-level state.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, fields
from typing import Any, Mapping

from .errors import InputError

_TOLERANCE_FIELDS = (
    "cluster_tol",
    "rank_tol",
    "verdict_margin",
    "pole_tol",
    "eps_boundary",
    "node_tol",
    "path_tol",
    "schwarz_tol",
    "tol_root",
    "ord_tol",
    "dep_tol",
    "zero_tol",
    "unimodular_tol",
)

_INTEGER_FIELDS = ("oracle_max_n", "grid_points", "max_n")


@dataclass(frozen=True)
class Config:
    cluster_tol: float = 1e-8
    rank_tol: float = 1e-10
    verdict_margin: float = 1e-7
    pole_tol: float = 1e-10
    eps_boundary: float = 1e-9
    node_tol: float = 1e-10
    path_tol: float = 1e-7
    schwarz_tol: float = 1e-8
    tol_root: float = 1e-8
    ord_tol: float = 1e-8
    dep_tol: float = 1e-9
    zero_tol: float = 1e-12
    unimodular_tol: float = 1e-6
    oracle_max_n: int = 12
    grid_points: int = 64
    max_n: int = 64
    seed: int = 0

    def __post_init__(self):
        for name in _TOLERANCE_FIELDS:
            value = getattr(self, name)
            if not (0.0 < value < 1e-2):
                raise InputError(f"{name} must lie in (0, 1e-2), got {value!r}", field=name)
        for name in _INTEGER_FIELDS:
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InputError(f"{name} must be a positive integer, got {value!r}", field=name)
        if not (-(2**63) <= self.seed < 2**64):
            raise InputError("seed must fit in 64 bits", field="seed")

    def replace(self, **changes: Any) -> "Config":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base: "Config | None" = None) -> "Config":
        """Overlay ``data`` on ``base`` (defaults when omitted); unknown keys are rejected."""
        known = {f.name: f for f in fields(cls)}
        changes = {}
        for key, value in data.items():
            if key not in known:
                raise InputError(f"unknown config field {key!r}", field=key)
            if value is None:
                continue
            if key in _INTEGER_FIELDS or key == "seed":
                if isinstance(value, bool) or not isinstance(value, int):
                    raise InputError(f"{key} must be an integer", field=key)
            elif isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InputError(f"{key} must be a number", field=key)
            changes[key] = value
        return dataclasses.replace(base or cls(), **changes)

    @classmethod
    def from_json_file(cls, path: str, base: "Config | None" = None) -> "Config":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"config is not valid JSON: {exc}", field="$") from exc
        if not isinstance(data, dict):
            raise InputError("config must be a JSON object", field="$")
        return cls.from_mapping(data, base)


DEFAULT = Config()
