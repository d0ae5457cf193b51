"""Parameter arithmetic for strongly regular graphs.

Everything here is exact integer arithmetic on the quadruple
``(v, k, lambda, mu)``; no graph is ever built.
"""

from dataclasses import dataclass, field
from math import isqrt

from .errors import (
    ComplementDegenerate,
    ConferenceOddity,
    InvalidParameters,
    NonIntegralMultiplicity,
    NonIntegralOrder,
)


def _param_problems(v, k, lam, mu):
    problems = []
    if not all(isinstance(x, int) for x in (v, k, lam, mu)):
        return ["parameters must be integers"]
    if not 0 < k < v - 1:
        problems.append(f"need 0 < k < v-1, got k={k}, v={v}")
    if lam < 0:
        problems.append(f"lambda must be nonnegative, got {lam}")
    if mu < 1:
        problems.append(f"mu must be positive for a connected graph, got {mu}")
    if k * (k - lam - 1) != (v - k - 1) * mu:
        problems.append(
            f"k(k-lambda-1) = {k * (k - lam - 1)} != (v-k-1)mu = {(v - k - 1) * mu}"
        )
    return problems


@dataclass(frozen=True)
class SrgParams:
    """A validated parameter set ``srg(v, k, lambda, mu)``."""

    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        problems = _param_problems(self.v, self.k, self.lam, self.mu)
        if problems:
            raise InvalidParameters("; ".join(problems))

    def __iter__(self):
        return iter((self.v, self.k, self.lam, self.mu))

    def __str__(self):
        return f"srg({self.v},{self.k},{self.lam},{self.mu})"


@dataclass(frozen=True)
class LaplacianSpectrum:
    """Nonzero Laplacian eigenvalues ``r < s`` with multiplicities ``f``, ``g``.

    For a conference graph ``integral`` is False, ``r`` and ``s`` are None and
    ``f == g == (v-1)/2``.
    """

    r: int | None
    s: int | None
    f: int
    g: int
    integral: bool = True


@dataclass
class FeasibilityReport:
    identity_ok: bool
    multiplicities_integral: bool
    absolute_bound_ok: bool
    conference: bool
    notes: list = field(default_factory=list)

    @property
    def feasible(self):
        return self.identity_ok and self.multiplicities_integral and self.absolute_bound_ok

    def to_json(self):
        return {
            "identity_ok": self.identity_ok,
            "multiplicities_integral": self.multiplicities_integral,
            "absolute_bound_ok": self.absolute_bound_ok,
            "conference": self.conference,
            "notes": list(self.notes),
        }


def _spectrum(v, k, lam, mu):
    trace = 2 * k - lam + mu        # r + s
    prod = mu * v                   # r * s
    disc = trace * trace - 4 * prod
    root = isqrt(disc) if disc >= 0 else -1
    if root < 0 or root * root != disc:
        if 2 * k + (v - 1) * (lam - mu) != 0:
            raise ConferenceOddity(
                f"irrational eigenvalues but 2k + (v-1)(lambda-mu) = "
                f"{2 * k + (v - 1) * (lam - mu)} != 0"
            )
        if (v - 1) % 2:
            raise NonIntegralMultiplicity("conference graph needs v odd")
        half = (v - 1) // 2
        return LaplacianSpectrum(None, None, half, half, integral=False)
    if root == 0 or (trace - root) % 2:
        raise NonIntegralMultiplicity(
            f"eigenvalues ({trace} +- {root})/2 are not distinct integers"
        )
    r, s = (trace - root) // 2, (trace + root) // 2
    f_num = s * (v - 1) - v * k
    g_num = v * k - r * (v - 1)
    if f_num % (s - r) or g_num % (s - r):
        raise NonIntegralMultiplicity(
            f"multiplicities {f_num}/{s - r} and {g_num}/{s - r} are not integers"
        )
    f, g = f_num // (s - r), g_num // (s - r)
    if f < 1 or g < 1:
        raise NonIntegralMultiplicity(f"multiplicities must be positive, got f={f}, g={g}")
    return LaplacianSpectrum(r, s, f, g)


def laplacian_spectrum(params):
    """Laplacian spectrum ``(r, f, s, g)`` of an ``srg(v, k, lambda, mu)``.

    Solves ``r + s = 2k - lambda + mu``, ``rs = mu v``, ``f + g = v - 1`` and
    ``rf + sg = vk``. A non-square discriminant means a conference graph, which
    is returned flagged rather than approximated.
    """
    return _spectrum(*params)


def _absolute_bound_holds(v, m):
    return 2 * v <= m * (m + 3)


def validate_params(v, k=None, lam=None, mu=None):
    """Feasibility report for raw integers; never raises.

    Accepts either four integers or a single :class:`SrgParams` / 4-tuple.
    """
    if k is None:
        v, k, lam, mu = v
    report = FeasibilityReport(True, True, True, False)
    if not all(isinstance(x, int) for x in (v, k, lam, mu)):
        report.identity_ok = report.multiplicities_integral = False
        report.notes.append("parameters must be integers")
        return report
    report.identity_ok = k * (k - lam - 1) == (v - k - 1) * mu
    report.notes.extend(_param_problems(v, k, lam, mu))
    if not (0 < k < v - 1 and lam >= 0 and mu >= 1):
        report.multiplicities_integral = False
        report.notes.append("spectrum not evaluated")
        return report
    try:
        spec = _spectrum(v, k, lam, mu)
    except (NonIntegralMultiplicity, ConferenceOddity) as exc:
        report.multiplicities_integral = False
        report.notes.append(str(exc))
        return report
    if not spec.integral:
        report.conference = True
        report.notes.append("conference graph: irrational eigenvalues, absolute bound not evaluated")
        return report
    for name, m in (("f", spec.f), ("g", spec.g)):
        if not _absolute_bound_holds(v, m):
            report.absolute_bound_ok = False
            report.notes.append(
                f"absolute bound fails: v={v} > {name}({name}+3)/2 = {m * (m + 3) // 2}"
            )
    return report


def critical_group_order(spec, v):
    """Number of spanning trees ``r^f s^g / v``."""
    if not spec.integral:
        raise ValueError("order formula needs an integral spectrum")
    num = spec.r ** spec.f * spec.s ** spec.g
    if num % v:
        raise NonIntegralOrder(f"{v} does not divide r^f s^g")
    return num // v


def exponent_bound(spec):
    """``r * s``, which kills the critical group."""
    if not spec.integral:
        raise ValueError("exponent bound needs an integral spectrum")
    return spec.r * spec.s


def complement_params(params):
    v, k, lam, mu = params
    try:
        return SrgParams(v, v - k - 1, v - 2 - 2 * k + mu, v - 2 * k + lam)
    except InvalidParameters as exc:
        raise ComplementDegenerate(f"complement of {params} is not a connected srg: {exc}") from None
