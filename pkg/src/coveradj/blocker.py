"""Minimal transversals (the blocker) of a clutter."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .core import BinaryPoint, Clutter, mask_of, support_of


def is_transversal(c: Clutter, t: Iterable[int]) -> bool:
    tm = mask_of(t)
    return all(rm & tm for rm in c.masks)


def _is_minimal_mask(masks: tuple[int, ...], tm: int) -> bool:
    if not all(rm & tm for rm in masks):
        return False
    # every chosen element needs a row that it alone covers
    private = 0
    for rm in masks:
        hit = rm & tm
        if hit & (hit - 1) == 0:
            private |= hit
    return private == tm


def is_minimal_transversal(c: Clutter, t: Iterable[int]) -> bool:
    return _is_minimal_mask(c.masks, mask_of(t))


@lru_cache(maxsize=256)
def _transversal_masks(masks: tuple[int, ...]) -> tuple[int, ...]:
    found: set[int] = set()

    def grow(chosen: int, banned: int) -> None:
        for rm in masks:
            if not rm & chosen:
                break
        else:
            if _is_minimal_mask(masks, chosen):
                found.add(chosen)
            return
        # branch on the lowest-index uncovered row; taking element k bans the earlier ones
        free = rm & ~banned
        while free:
            low = free & -free
            new = chosen | low
            if _has_private_rows(masks, new):
                grow(new, banned)
            banned |= low
            free &= ~low

    grow(0, 0)
    return tuple(sorted(found))


def _has_private_rows(masks: tuple[int, ...], chosen: int) -> bool:
    # private rows only disappear as `chosen` grows, so failing here prunes the branch
    private = 0
    for rm in masks:
        hit = rm & chosen
        if hit & (hit - 1) == 0:
            private |= hit
    return private == chosen


def _bits_key(p: BinaryPoint):
    return p.bits


def minimal_transversals(c: Clutter) -> list[BinaryPoint]:
    """All minimal transversals as 0/1 points, sorted lexicographically by bit vector."""
    pts = [BinaryPoint.from_mask(c.n_cols, mk) for mk in _transversal_masks(c.masks)]
    pts.sort(key=_bits_key)
    return pts


def blocker_clutter(c: Clutter) -> Clutter:
    return Clutter(c.n_cols, tuple(p.support for p in minimal_transversals(c)))


def transversals_brute_force(c: Clutter) -> list[BinaryPoint]:
    """Reference enumeration over every subset of the ground set (n <= 20)."""
    if c.n_cols > 20:
        raise ValueError("brute force enumeration limited to n <= 20")
    out = []
    for tm in range(1 << c.n_cols):
        if _is_minimal_mask(c.masks, tm):
            out.append(BinaryPoint(c.n_cols, support_of(tm)))
    out.sort(key=_bits_key)
    return out
