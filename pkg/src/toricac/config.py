"""Runtime limits shared by the enumeration-heavy operations.

Defaults can be overridden through ``TORICAC_MAX_BOX_VOLUME``,
``TORICAC_ITERATION_LIMIT`` and ``TORICAC_FLIP_SEARCH_DEPTH``.
"""
import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    max_box_volume: int = 10**7
    # None means 10 * number of rays
    iteration_limit: int | None = None
    flip_search_depth: int = 12


def from_env(environ=None) -> Settings:
    environ = os.environ if environ is None else environ
    s = Settings()
    for field, key in (("max_box_volume", "TORICAC_MAX_BOX_VOLUME"),
                       ("iteration_limit", "TORICAC_ITERATION_LIMIT"),
                       ("flip_search_depth", "TORICAC_FLIP_SEARCH_DEPTH")):
        if key in environ:
            s = replace(s, **{field: int(environ[key])})
    return s


settings = from_env()


def configure(**kwargs) -> Settings:
    """Replace the module-level settings; unknown keys raise TypeError."""
    global settings
    settings = replace(settings, **{k: v for k, v in kwargs.items() if v is not None})
    return settings
