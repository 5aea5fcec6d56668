"""Loader for the convention ledger (conventions.txt).

The ledger is the single source of truth for every sign and ordering
convention; runtime code and tests both read it through this module.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass


@dataclass(frozen=True)
class Conventions:
    central_angle_sign: int
    boundary_angle_sign: int
    rotation_generator: str
    jacobian_columns: str
    slice_sign: int
    eval_vs_iota_sign: int
    action_boundary_sign: int
    leibniz_sign: int
    b_commute_sign: int


def _parse(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"conventions.txt line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def load_conventions() -> Conventions:
    text = importlib.resources.files("cycform").joinpath("conventions.txt").read_text()
    raw = _parse(text)
    def integer(key: str) -> int:
        v = int(raw[key])
        if v not in (-1, 1):
            raise ValueError(f"convention {key} must be +1 or -1, got {v}")
        return v
    return Conventions(
        central_angle_sign=integer("central_angle_sign"),
        boundary_angle_sign=integer("boundary_angle_sign"),
        rotation_generator=raw["rotation_generator"],
        jacobian_columns=raw["jacobian_columns"],
        slice_sign=integer("slice_sign"),
        eval_vs_iota_sign=integer("eval_vs_iota_sign"),
        action_boundary_sign=integer("action_boundary_sign"),
        leibniz_sign=integer("leibniz_sign"),
        b_commute_sign=integer("b_commute_sign"),
    )


CONVENTIONS = load_conventions()
