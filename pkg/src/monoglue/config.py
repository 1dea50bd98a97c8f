"""Tunable limits in one place."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_BOUND = "MONOGLUE_DEGREE_BOUND"


@dataclass(frozen=True)
class Settings:
    degree_bound: int = 8  # saturation degree of presented monoids
    realize_limit: int = 512  # largest finite monoid realised as a table
    action_limit: int = 2000  # points allowed in one action enumeration
    family_max_size: int = 4  # largest cyclic M-set in the flatness family
    iso_degree: int = 4  # preimage search depth when exhibiting inverses
    hom_degree: int = 2  # truncation of homs out of infinite test monoids

    @classmethod
    def from_env(cls) -> "Settings":
        raw = os.environ.get(ENV_BOUND)
        if not raw:
            return cls()
        try:
            bound = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_BOUND} must be an integer, got {raw!r}") from None
        return replace(cls(), degree_bound=bound)


DEFAULTS = Settings()
