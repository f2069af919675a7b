"""Rate function ``I(x) = x + x**2/4`` and its essential infimum over interval unions.

Sets are finite unions of intervals inside ``[0, inf)``.  Singletons are
allowed but carry no Lebesgue mass, so they never affect the essential
infimum; a set made only of singletons has ess-inf ``+inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ContractError, DomainError


def rate(x):
    """``x + x**2 / 4`` for ``x >= 0``."""
    if np.any(np.asarray(x) < 0) or np.any(np.isnan(x)):
        raise DomainError("rate is defined on [0, inf)")
    return x + 0.25 * x * x


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def __str__(self) -> str:
        if self.is_singleton:
            return "{" + _fmt(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{_fmt(self.lo)},{_fmt(self.hi)}{right}"


@dataclass(frozen=True)
class IntervalUnion:
    parts: tuple[Interval, ...] = ()

    @classmethod
    def of(cls, *parts) -> "IntervalUnion":
        """Build from ``Interval`` objects or ``(lo, hi[, lo_closed, hi_closed])`` tuples."""
        return cls(tuple(p if isinstance(p, Interval) else Interval(*p) for p in parts))

    @property
    def is_null(self) -> bool:
        return all(p.is_singleton for p in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def _fmt(v: float) -> str:
    if v == math.inf:
        return "inf"
    return repr(float(v)).removesuffix(".0")


def _validate(part: Interval) -> None:
    lo, hi = part.lo, part.hi
    if math.isnan(lo) or math.isnan(hi):
        raise DomainError(f"NaN endpoint in {part!r}")
    if lo < 0 or hi < 0:
        raise DomainError(f"negative endpoint in {part!r}; sets must lie in [0, inf)")
    if lo > hi:
        raise DomainError(f"lo > hi in {part!r}")
    if lo == math.inf:
        raise DomainError(f"lower endpoint must be finite in {part!r}")
    if hi == math.inf and part.hi_closed:
        raise DomainError(f"+inf cannot be a closed endpoint in {part!r}")


def normalize_set(raw: IntervalUnion | Iterable[Interval]) -> IntervalUnion:
    """Canonical form: validated, sorted by ``lo``, overlapping or touching parts merged.

    Two parts touching at a point are merged only when at least one of them
    contains that point; ``[1,2)`` and ``(2,3]`` stay apart.  Empty parts
    such as ``(2,2)`` are dropped.  Idempotent.
    """
    parts = list(raw.parts if isinstance(raw, IntervalUnion) else raw)
    for part in parts:
        _validate(part)
    parts = [p for p in parts if not (p.is_singleton and not (p.lo_closed and p.hi_closed))]
    parts.sort(key=lambda p: (p.lo, not p.lo_closed))

    merged: list[Interval] = []
    for nxt in parts:
        if merged:
            cur = merged[-1]
            if nxt.lo < cur.hi or (nxt.lo == cur.hi and (cur.hi_closed or nxt.lo_closed)):
                lo_closed = cur.lo_closed or (nxt.lo == cur.lo and nxt.lo_closed)
                if nxt.hi > cur.hi:
                    hi, hi_closed = nxt.hi, nxt.hi_closed
                elif nxt.hi == cur.hi:
                    hi, hi_closed = cur.hi, cur.hi_closed or nxt.hi_closed
                else:
                    hi, hi_closed = cur.hi, cur.hi_closed
                merged[-1] = Interval(cur.lo, hi, lo_closed, hi_closed)
                continue
        merged.append(nxt)
    return IntervalUnion(tuple(merged))


def is_normalized(a: IntervalUnion) -> bool:
    try:
        return normalize_set(a) == a
    except DomainError:
        return False


def require_normalized(a: IntervalUnion) -> None:
    if not isinstance(a, IntervalUnion) or not is_normalized(a):
        raise ContractError(f"set is not in canonical form: {a!r}; call normalize_set first")


def ess_inf_rate(a: IntervalUnion) -> float:
    """Essential infimum of the rate over ``a``; ``+inf`` for null or empty sets.

    The rate is continuous and increasing, so the ess-inf is the rate at the
    smallest left endpoint among parts of positive length.
    """
    require_normalized(a)
    los = [p.lo for p in a.parts if p.hi > p.lo]
    if not los:
        return math.inf
    return float(rate(min(los)))


# ---------------------------------------------------------------------------
# text syntax: "[1,2],{5},(3,inf)"

_NUM = r"[-+]?(?:\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|inf(?:inity)?)"
_PART_RE = re.compile(
    rf"\s*(?:(?P<open>[\[(])\s*(?P<lo>{_NUM})\s*,\s*(?P<hi>{_NUM})\s*(?P<close>[\])])"
    rf"|\{{\s*(?P<pt>{_NUM})\s*\}})\s*",
    re.IGNORECASE,
)


def parse_set(text: str) -> IntervalUnion:
    """Parse the comma-separated set syntax and return the normalized union."""
    parts = []
    pos = 0
    text = text.strip()
    if not text:
        raise DomainError("empty set specification")
    while True:
        m = _PART_RE.match(text, pos)
        if m is None:
            raise DomainError(f"malformed set at position {pos}: {text[pos:]!r}")
        if m.group("pt") is not None:
            v = float(m.group("pt"))
            parts.append(Interval(v, v, True, True))
        else:
            parts.append(
                Interval(
                    float(m.group("lo")),
                    float(m.group("hi")),
                    m.group("open") == "[",
                    m.group("close") == "]",
                )
            )
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise DomainError(f"expected ',' at position {pos}: {text[pos:]!r}")
        pos += 1
    return normalize_set(parts)
