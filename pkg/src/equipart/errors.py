"""Exceptions and resource caps shared by every module."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace


class InputError(ValueError):
    """Rejected input: arity mismatch, out-of-range parameter, bad syntax."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured term/degree/rank caps."""


@dataclass(frozen=True)
class Limits:
    max_terms: int = 10**7
    max_degree: int = 2**20
    max_exponent: int = 2**16
    max_flag_rank: int = 720


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("equipart_limits", default=Limits())


def current_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def resource_limits(**overrides):
    """Temporarily override caps for the current context (thread-safe)."""
    token = _LIMITS.set(replace(_LIMITS.get(), **{k: v for k, v in overrides.items() if v is not None}))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)
