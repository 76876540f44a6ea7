"""Closed integer intervals for cohomology dimensions.

Every dimension the engine reports is an ``Iv``.  Exact values are
degenerate intervals (``lo == hi``); ``hi = None`` means the engine has no
certified upper bound for the slot.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentHints


@dataclass(frozen=True)
class Iv:
    lo: int
    hi: int | None  # None: no certified upper bound

    def __post_init__(self):
        if self.lo < 0:
            raise ValueError(f"negative dimension bound: {self}")
        if self.hi is not None and self.hi < self.lo:
            raise ValueError(f"empty interval: {self}")

    @property
    def exact(self) -> bool:
        return self.hi == self.lo

    @property
    def is_zero(self) -> bool:
        return self.lo == 0 and self.hi == 0

    def __str__(self) -> str:
        if self.exact:
            return str(self.lo)
        if self.hi is None:
            return f"{self.lo}..?"
        return f"{self.lo}..{self.hi}"


def iv(lo: int, hi: int | None = None) -> Iv:
    """Exact interval [lo, lo], or [lo, hi] when hi is given."""
    return Iv(lo, lo if hi is None else hi)


TOP = Iv(0, None)  # no information


def iv_add(a: Iv, b: Iv) -> Iv:
    hi = None if a.hi is None or b.hi is None else a.hi + b.hi
    return Iv(a.lo + b.lo, hi)


def iv_meet(a: Iv, b: Iv, context: str = "") -> Iv:
    """Intersection of two enclosures of the same value."""
    lo = max(a.lo, b.lo)
    if a.hi is None:
        hi = b.hi
    elif b.hi is None:
        hi = a.hi
    else:
        hi = min(a.hi, b.hi)
    if hi is not None and hi < lo:
        raise InconsistentHints(f"empty meet {a} & {b}" + (f" at {context}" if context else ""))
    return Iv(lo, hi)


# An IVec is a tuple of Iv indexed by cohomological degree 0..n.

def exact_vec(values) -> tuple[Iv, ...]:
    return tuple(iv(int(v)) for v in values)


def top_vec(length: int) -> tuple[Iv, ...]:
    return (TOP,) * length


def pad_vec(v: tuple[Iv, ...], length: int) -> tuple[Iv, ...]:
    """Extend with exact zeros: degrees above the support dimension vanish."""
    if len(v) >= length:
        return v[:length]
    return v + (iv(0),) * (length - len(v))


def add_vecs(a: tuple[Iv, ...], b: tuple[Iv, ...]) -> tuple[Iv, ...]:
    n = max(len(a), len(b))
    a, b = pad_vec(a, n), pad_vec(b, n)
    return tuple(iv_add(x, y) for x, y in zip(a, b))


def meet_vecs(a: tuple[Iv, ...], b: tuple[Iv, ...], context: str = "") -> tuple[Iv, ...]:
    n = max(len(a), len(b))
    a, b = pad_vec(a, n), pad_vec(b, n)
    return tuple(iv_meet(x, y, context) for x, y in zip(a, b))


def transpose_vec(v: tuple[Iv, ...]) -> tuple[Iv, ...]:
    """Serre-dual reading of a dimension vector: degree i <-> n-i."""
    return tuple(reversed(v))


def vec_exact(v: tuple[Iv, ...]) -> bool:
    return all(x.exact for x in v)
