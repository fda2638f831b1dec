"""Desk-scale enumeration caps shared across modules.

Exhaustive machinery (matching enumeration, coalition sweeps, odd-set
rows, determinant sweeps) refuses cleanly above these sizes instead of
silently approximating.
"""

from __future__ import annotations

from dataclasses import dataclass


class CapExceededError(Exception):
    """The requested computation is above the configured enumeration cap."""


@dataclass(frozen=True)
class EnumerationCaps:
    max_vertices: int = 12
    max_edges: int = 16
    max_tum_order: int = 8


DEFAULT_CAPS = EnumerationCaps()


def check_instance_size(n_vertices: int, n_edges: int, caps: EnumerationCaps) -> None:
    if n_vertices > caps.max_vertices:
        raise CapExceededError(
            f"{n_vertices} vertices exceed the enumeration cap of {caps.max_vertices}")
    if n_edges > caps.max_edges:
        raise CapExceededError(
            f"{n_edges} edges exceed the enumeration cap of {caps.max_edges}")
