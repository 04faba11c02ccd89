"""Dimensions of spaces of reflexive pluri-forms and the numerics of the 4:1 cover.

Everything here is integer arithmetic.  The invariant subspace on the cover
curve is never materialized; its dimension is read off the line.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curves import SurfaceModel, validate
from .errors import PreconditionError
from .mmp import count_nonreduced, to_mori_fiber


@dataclass(frozen=True)
class PluriformQuery:
    m: int
    r: int

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError(f"tensor power m must be >= 1, got {self.m}")
        if self.r < 0:
            raise PreconditionError(f"number of non-reduced fibers must be >= 0, got {self.r}")

    @property
    def degree(self) -> int:
        return -2 * self.m + pushforward_exponent(self.m) * self.r


def h0_line(d: int) -> int:
    """h^0(P^1, O(d))."""
    return d + 1 if d >= 0 else 0


def pushforward_exponent(m: int) -> int:
    """Degree contributed by each non-reduced fiber to the pushed-forward ``O(mR)``."""
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    return m // 2


def pluriform_dim(m: int | PluriformQuery, r: int | None = None) -> int:
    """``h^0(P^1, O(-2m + [m/2] r))``.

    Accepts either a :class:`PluriformQuery` or the pair ``(m, r)``.
    """
    q = m if isinstance(m, PluriformQuery) else PluriformQuery(m, r)
    return h0_line(q.degree)


def pluriform_dim_of_model(model: SurfaceModel, m: int) -> int:
    """Pluri-form dimension of ``model``; equal to that of its Mori fiber model."""
    for label, config in model.iter_fibers():
        problems = validate(config)
        if problems:
            raise PreconditionError(f"fiber {label!r} is invalid: {problems[0].detail}")
    mori, _ = to_mori_fiber(model)
    return pluriform_dim(m, count_nonreduced(mori))


def genus_cover(r: int) -> int:
    """Genus of a 4:1 cover of the line ramified at 2 points (index 2) over each of r points."""
    if r < 4:
        raise PreconditionError(f"the cover needs at least 4 branch points, got r={r}")
    # Riemann-Hurwitz: 2g - 2 = 4 * (-2) + 2r
    twice = 4 * (-2) + 2 * r + 2
    return twice // 2


def h0_pluricanonical_curve(g: int, m: int) -> int:
    """h^0(E, mK_E) on a smooth curve of genus ``g >= 1``."""
    if g < 1:
        raise PreconditionError(f"genus must be >= 1, got {g}")
    if m < 1:
        raise PreconditionError(f"m must be >= 1, got {m}")
    if m == 1:
        return g
    if g == 1:
        return 1
    return (2 * m - 1) * (g - 1)


def invariant_dim_identity(r: int, m: int) -> bool:
    """The invariant part fits inside the full space, with equality for r = 4 and even m."""
    full = h0_pluricanonical_curve(genus_cover(r), m)
    invariant = pluriform_dim(m, r)
    ok = invariant <= full
    if r == 4 and m % 2 == 0:
        ok = ok and invariant == full
    return ok
