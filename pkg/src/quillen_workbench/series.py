"""Truncated integer power series and the Poincare-series recursions.

All arithmetic is exact; halving and quartering raise
:class:`RealizabilityError` when a coefficient is not divisible, since the
formulas count basis elements and such an input cannot come from a module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import RealizabilityError


@dataclass(frozen=True)
class PowerSeries:
    truncation: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients[: self.truncation + 1])
        coeffs += (0,) * (self.truncation + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_list(cls, coeffs: Sequence[int], truncation: int | None = None) -> PowerSeries:
        n = len(coeffs) - 1 if truncation is None else truncation
        return cls(n, tuple(coeffs))

    @classmethod
    def constant(cls, c: int, truncation: int) -> PowerSeries:
        return cls(truncation, (c,))

    @classmethod
    def zero(cls, truncation: int) -> PowerSeries:
        return cls(truncation, ())

    @classmethod
    def rational(cls, num: Sequence[int], den: Sequence[int], truncation: int) -> PowerSeries:
        """Expand ``num / den`` by the linear recurrence; ``den[0]`` must be 1."""
        if not den or den[0] != 1:
            raise ValueError("denominator must have constant term 1")
        out = []
        for n in range(truncation + 1):
            c = num[n] if n < len(num) else 0
            for k in range(1, min(n, len(den) - 1) + 1):
                c -= den[k] * out[n - k]
            out.append(c)
        return cls(truncation, tuple(out))

    @classmethod
    def geometric(cls, truncation: int, power: int = 1) -> PowerSeries:
        """``1 / (1 - t)^power``."""
        s = cls.constant(1, truncation)
        for _ in range(power):
            s = s * cls.rational([1], [1, -1], truncation)
        return s

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n] if 0 <= n <= self.truncation else 0

    def __len__(self) -> int:
        return self.truncation + 1

    def _align(self, other: PowerSeries | int) -> tuple[int, tuple[int, ...]]:
        if isinstance(other, int):
            return self.truncation, PowerSeries.constant(other, self.truncation).coefficients
        n = min(self.truncation, other.truncation)
        return n, other.coefficients[: n + 1]

    def __add__(self, other: PowerSeries | int) -> PowerSeries:
        n, oc = self._align(other)
        return PowerSeries(n, tuple(a + b for a, b in zip(self.coefficients, oc)))

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries(self.truncation, tuple(-a for a in self.coefficients))

    def __sub__(self, other: PowerSeries | int) -> PowerSeries:
        n, oc = self._align(other)
        return PowerSeries(n, tuple(a - b for a, b in zip(self.coefficients, oc)))

    def __rsub__(self, other: int) -> PowerSeries:
        return (-self) + other

    def __mul__(self, other: PowerSeries | int) -> PowerSeries:
        if isinstance(other, int):
            return PowerSeries(self.truncation, tuple(other * a for a in self.coefficients))
        n = min(self.truncation, other.truncation)
        a, b = self.coefficients, other.coefficients
        out = [0] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                for j in range(n + 1 - i):
                    out[i + j] += a[i] * b[j]
        return PowerSeries(n, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PowerSeries:
        out = PowerSeries.constant(1, self.truncation)
        for _ in range(k):
            out = out * self
        return out

    def substitute_power(self, k: int) -> PowerSeries:
        """``S(t^k)``, by spreading the coefficients."""
        out = [0] * (self.truncation + 1)
        for i in range(0, self.truncation // k + 1):
            out[i * k] = self.coefficients[i]
        return PowerSeries(self.truncation, tuple(out))

    def shift(self, k: int = 1) -> PowerSeries:
        """Multiplication by ``t^k``."""
        return PowerSeries(self.truncation, (0,) * k + self.coefficients)

    def exact_div(self, d: int) -> PowerSeries:
        bad = [n for n, c in enumerate(self.coefficients) if c % d]
        if bad:
            raise RealizabilityError(f"coefficient of t^{bad[0]} is not divisible by {d}")
        return PowerSeries(self.truncation, tuple(c // d for c in self.coefficients))

    def truncate(self, n: int) -> PowerSeries:
        return PowerSeries(min(n, self.truncation), self.coefficients)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def require_nonnegative(self, what: str) -> PowerSeries:
        neg = [n for n, c in enumerate(self.coefficients) if c < 0]
        if neg:
            raise RealizabilityError(f"{what}: negative coefficient at t^{neg[0]}")
        return self

    def to_list(self) -> list[int]:
        return list(self.coefficients)

    def to_json(self, label: str = "") -> dict:
        return {"label": label, "truncation": self.truncation, "coefficients": self.to_list()}


def _geom(n: int) -> PowerSeries:
    return PowerSeries.geometric(n)


def series_sym_invariants(s: PowerSeries) -> PowerSeries:
    """Swap invariants of the tensor square: ``(S(t)^2 + S(t^2)) / 2``."""
    return (s * s + s.substitute_power(2)).exact_div(2)


def series_quadratic(s: PowerSeries) -> PowerSeries:
    """Series of the quadratic construction: ``(S^2 + S(t^2)) / 2 + t/(1-t) S(t^2)``."""
    n = s.truncation
    return series_sym_invariants(s) + (_geom(n) * s.substitute_power(2)).shift(1)


def series_gysin(s_x: PowerSeries, s_ker: PowerSeries) -> PowerSeries:
    """``(1 - t) S(X) + (1 + t) S(ker e)``."""
    out = s_x - s_x.shift(1) + s_ker + s_ker.shift(1)
    return out.require_nonnegative("gysin series")


def series_tau_quadratic(s_m: PowerSeries, s_tau: PowerSeries) -> PowerSeries:
    """Series of the ``u``-trivial part of the quadratic construction on a reduced module."""
    out = series_quadratic(s_m) - (series_sym_invariants(s_m) - series_sym_invariants(s_tau))
    return out.require_nonnegative("tau series")


@dataclass(frozen=True)
class PipelineStep:
    k: int
    s: PowerSeries
    t: PowerSeries
    a: PowerSeries


def series_sylow_alt_pipeline_steps(m: int, truncation: int) -> list[PipelineStep]:
    """Steps ``k = 1..m`` for the Sylows of ``Sym(2^k)`` (``s``), the ``u``-trivial part (``t``)
    and the alternating Sylow (``a``)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    s = _geom(truncation)
    t = PowerSeries.zero(truncation)
    steps = []
    for k in range(1, m + 1):
        steps.append(PipelineStep(k, s, t, series_gysin(s, t)))
        s, t = series_quadratic(s), series_tau_quadratic(s, t)
    return steps


def series_sylow_alt_pipeline(m: int, truncation: int) -> tuple[PowerSeries, PowerSeries, PowerSeries]:
    last = series_sylow_alt_pipeline_steps(m, truncation)[-1]
    return last.s, last.t, last.a


def series_sylow_symmetric(n: int, truncation: int) -> PowerSeries:
    """Product over the binary digits of ``n`` of the ``Sym(2^k)`` Sylow series."""
    out = PowerSeries.constant(1, truncation)
    s = PowerSeries.constant(1, truncation)
    k = 0
    while n >> k:
        if (n >> k) & 1:
            out = out * s
        s = series_quadratic(s)
        k += 1
    return out


def series_a4x(s: PowerSeries) -> PowerSeries:
    """Series of the Klein group acting on the fourth tensor power.

    ``S(t^4)/(1-t)^2 + 3/(2(1-t)) (S(t^2)^2 - S(t^4)) + (S^4 - 3 S(t^2)^2 + 2 S(t^4)) / 4``.
    """
    n = s.truncation
    s2 = s.substitute_power(2)
    s4 = s.substitute_power(4)
    first = PowerSeries.geometric(n, 2) * s4
    second = (_geom(n) * (s2 * s2 - s4) * 3).exact_div(2)
    third = (s**4 - 3 * (s2 * s2) + 2 * s4).exact_div(4)
    return (first + second + third).require_nonnegative("a4x series")


def alt_dim_degree2(m: int) -> int:
    """``(m^3 - m + 18) / 6``, the degree-2 dimension for the alternating Sylow at ``2^m``."""
    return (m**3 - m + 18) // 6
