"""Systole bounds for signature (g, n), packing quantities, and sandwich reports.

``U`` is the Buser-Sarnak constant. Its true value is unknown, so every
U-dependent quantity takes it from :class:`BoundsConfig`. Lower bounds that
come out non-positive are returned as-is; they are vacuous, not errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .congruence_signature import Signature, signature_of_level
from .errors import BoundInapplicableError, DegenerateGenusError, ToolkitError
from .hyp_trig import collar_lower_bound, leq
from .systole_search import DEFAULT_LEVEL_CAP, min_trace_exact

# margin for the finite-p check of sys(M_p) >= (4/3) ln g_p
DEFAULT_SLACK = 4.5


@dataclass(frozen=True)
class BoundsConfig:
    U: float
    alpha: float = 0.0

    def __post_init__(self):
        if not self.U > 0:
            raise ToolkitError(f"U must be positive, got {self.U}")
        if not 0 <= self.alpha < 1:
            raise ToolkitError(f"alpha must lie in [0, 1), got {self.alpha}")


def _need_genus(g: int, least: int = 2) -> None:
    if g < least:
        raise ToolkitError(f"genus must be >= {least}, got {g}")


def schmutz_upper(g: int, n: int) -> float:
    """``4 arccosh((6g - 6 + 3n)/n)`` for ``n >= 2``, ``(g, n) != (0, 3)``."""
    if n < 2 or (g, n) == (0, 3) or 2 * g - 2 + n <= 0:
        raise BoundInapplicableError(f"bound inapplicable for (g, n) = ({g}, {n})")
    return 4.0 * math.acosh((6 * g - 6 + 3 * n) / n)


def buser_sarnak_bounds(g: int, cfg: BoundsConfig) -> tuple[float, float]:
    """Closed surfaces: ``U ln g <= sys(g, 0) <= 2 ln(4g - 2)``."""
    _need_genus(g)
    return cfg.U * math.log(g), 2.0 * math.log(4 * g - 2)


def prop_log_lower(g: int, n: int, cfg: BoundsConfig) -> float:
    """``min{U ln g, 2 arccosh(2(g-1)/n + 1)}``; the arccosh branch is dropped at ``n = 0``."""
    _need_genus(g)
    if n < 0:
        raise ToolkitError(f"cusp count must be >= 0, got {n}")
    closed = cfg.U * math.log(g)
    if n == 0:
        return closed
    return min(closed, 2.0 * math.acosh(2 * (g - 1) / n + 1))


def main_theorem_lower(g: int, n: int, cfg: BoundsConfig) -> float:
    """``U ln(g/(n+1))``, possibly non-positive."""
    _need_genus(g)
    if n < 0:
        raise ToolkitError(f"cusp count must be >= 0, got {n}")
    return cfg.U * math.log(g / (n + 1))


def floor_power(g: int, alpha: float) -> int:
    """``floor(g ** alpha)``, snapping float noise at exact integers (1000 ** (1/3))."""
    x = g**alpha
    m = round(x)
    if abs(x - m) <= 1e-9 * max(1.0, x):
        return int(m)
    return math.floor(x)


def remark_lower(g: int, cfg: BoundsConfig) -> tuple[int, float]:
    """Cusp count ``[g^alpha]`` and the bound ``min{U, 2(1 - alpha)} ln g``."""
    _need_genus(g)
    c_alpha = min(cfg.U, 2.0 * (1.0 - cfg.alpha))
    return floor_power(g, cfg.alpha), c_alpha * math.log(g)


def arithmetic_asymptote(g: int, n: int) -> float:
    """``4 ln(g/n)``, signed."""
    if g == 0:
        raise DegenerateGenusError("degenerate genus: g = 0")
    if g < 0 or n < 1:
        raise ToolkitError(f"need g >= 1 and n >= 1, got ({g}, {n})")
    return 4.0 * math.log(g / n)


@dataclass(frozen=True)
class PackingPlan:
    radius: float
    min_disk_count: int
    # which term of the min realises the radius: "closed" (U ln g / 4) or "arccosh"
    branch: str


def packing_disk_lower(g: int, r: float) -> int:
    """Disks of radius ``2r`` covering area ``4 pi (g - 1)``: ``ceil(2(g-1)/(cosh 2r - 1))``."""
    _need_genus(g)
    if not r > 0:
        raise ToolkitError(f"radius must be positive, got {r}")
    q = 2 * (g - 1) / (math.cosh(2 * r) - 1)
    # cosh(arccosh(x)) is only x up to rounding; do not let that push ceil up
    m = round(q)
    if abs(q - m) <= 1e-9 * max(1.0, q):
        return int(m)
    return math.ceil(q)


def packing_radius(g: int, n: int, cfg: BoundsConfig) -> PackingPlan:
    """Radius ``min{(U/4) ln g, (1/2) arccosh(2(g-1)/n + 1)}`` and its disk count."""
    _need_genus(g)
    if n < 1:
        raise ToolkitError(f"cusp count must be >= 1, got {n}")
    closed = cfg.U * math.log(g) / 4
    cusp = 0.5 * math.acosh(2 * (g - 1) / n + 1)
    r, branch = (cusp, "arccosh") if cusp <= closed else (closed, "closed")
    return PackingPlan(r, packing_disk_lower(g, r), branch)


@dataclass(frozen=True)
class Check:
    """One inequality ``lhs <= rhs``."""

    name: str
    lhs: float
    rhs: float
    passed: bool

    def describe(self) -> str:
        verdict = "ok" if self.passed else "VIOLATED"
        return f"{self.name}: {self.lhs:.9g} <= {self.rhs:.9g} [{verdict}]"


@dataclass
class BoundsReport:
    signature: Signature
    collar_lower: float
    schmutz_upper: float | None = None
    buser_sarnak_lower: float | None = None
    buser_sarnak_upper: float | None = None
    prop_log_lower: float | None = None
    main_theorem_lower: float | None = None
    remark_lower: tuple[int, float] | None = None
    arithmetic_asymptote: float | None = None
    level: int | None = None
    min_trace: int | None = None
    computed_systole: float | None = None
    gap_to_upper: float | None = None
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def bounds_report(g: int, n: int, cfg: BoundsConfig | None = None) -> BoundsReport:
    """Evaluate every bound that applies to ``(g, n)``.

    U-dependent fields stay ``None`` when ``cfg`` is omitted.
    """
    rep = BoundsReport(Signature(g, n), collar_lower_bound())
    try:
        rep.schmutz_upper = schmutz_upper(g, n)
    except BoundInapplicableError as exc:
        rep.notes.append(f"schmutz_upper: {exc}")
    if g >= 1 and n >= 1:
        rep.arithmetic_asymptote = arithmetic_asymptote(g, n)
    if cfg is None or g < 2:
        return rep
    if n == 0:
        rep.buser_sarnak_lower, rep.buser_sarnak_upper = buser_sarnak_bounds(g, cfg)
    rep.prop_log_lower = prop_log_lower(g, n, cfg)
    rep.main_theorem_lower = main_theorem_lower(g, n, cfg)
    rep.remark_lower = remark_lower(g, cfg)
    return rep


def verify_sandwich(
    p: int,
    cfg: BoundsConfig,
    slack: float = DEFAULT_SLACK,
    level_cap: int = DEFAULT_LEVEL_CAP,
    trace_cap: int | None = None,
) -> BoundsReport:
    """Compare the certified systole of ``Gamma(p)`` against every applicable bound.

    Since congruence surfaces are maximal in their moduli space, each bound on
    ``sys(g_p, n_p)`` must hold for the computed value. Violations are recorded
    in ``report.checks``; nothing here raises for a failed inequality.
    """
    sig = signature_of_level(p)
    g, n = sig.as_tuple()
    rep = bounds_report(g, n, cfg)
    res = min_trace_exact(p, trace_cap=trace_cap, level_cap=level_cap)
    sys_len = res.length
    rep.level, rep.min_trace, rep.computed_systole = p, res.min_trace, sys_len

    def check(name, lhs, rhs):
        rep.checks.append(Check(name, lhs, rhs, leq(lhs, rhs)))

    check("collar_lower <= systole", rep.collar_lower, sys_len)
    if rep.schmutz_upper is not None:
        check("systole <= schmutz_upper", sys_len, rep.schmutz_upper)
        rep.gap_to_upper = rep.schmutz_upper - sys_len
    if g >= 2:
        check("prop_log_lower <= systole", rep.prop_log_lower, sys_len)
        check("main_theorem_lower <= systole", rep.main_theorem_lower, sys_len)
        check("arithmetic_asymptote <= systole", rep.arithmetic_asymptote, sys_len)
        check(f"(4/3) ln g - {slack:g} <= systole", 4.0 / 3.0 * math.log(g) - slack, sys_len)
    if res.min_trace == p * p - 2:
        rep.notes.append("min_trace = p^2 - 2 (observed, not assumed)")
    return rep
