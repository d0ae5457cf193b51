"""Sylow p-subgroups of an srg critical group from the parameters alone.

For a prime p let ``a``, ``b`` be the p-valuations of the two nonzero
Laplacian eigenvalues and ``gamma`` that of ``v``. Contexts are normalised so
that ``a <= b``; ``f`` is always the multiplicity of the eigenvalue carrying
``a`` and ``g`` that of the one carrying ``b``. Then:

* ``a = 0``: the Sylow subgroup is forced,
  ``Z/p^(b-gamma) + (Z/p^b)^(g-1)``, and the p-rank is ``f`` or ``f+1``.
* ``a = b = 1``: it is determined by the p-rank ``e0``,
  ``(Z/p)^(f+g+gamma-2e0) + (Z/p^2)^(e0-gamma)``.
* ``a = 1, b = 2``: the p-rank leaves at most two candidates (one when
  ``gamma = 0``).
* anything else: only the counting identities and eigenvalue bounds are
  available.
"""

from dataclasses import dataclass, field

from ._arith import decimal, prime_divisors, require_prime, valuation
from .errors import (
    ConferenceGraph,
    E0OutOfRange,
    HypothesisViolation,
    InconsistentParameters,
    MuDivisibilityContradiction,
)
from .groups import AbelianGroup
from .linalg import IntMatrix, PrimeLocalDivisors, rank_mod_p
from .srg import SrgParams, critical_group_order, laplacian_spectrum, validate_params


@dataclass(frozen=True)
class PrimeContext:
    p: int
    a: int
    b: int
    gamma: int
    f: int
    g: int
    r: int          # eigenvalue with p-valuation a, multiplicity f
    s: int          # eigenvalue with p-valuation b, multiplicity g
    swapped: bool   # True when r/s (and f/g) were exchanged to get a <= b
    params: SrgParams

    @property
    def order_exponent(self):
        """``log_p`` of the Sylow subgroup order, ``a f + b g - gamma``."""
        return self.a * self.f + self.b * self.g - self.gamma


def prime_context(params, p):
    require_prime(p)
    spec = laplacian_spectrum(params)
    if not spec.integral:
        raise ConferenceGraph(f"{params} is a conference graph; eigenvalues are irrational")
    r, f, s, g = spec.r, spec.f, spec.s, spec.g
    a, b = valuation(r, p), valuation(s, p)
    swapped = a > b
    if swapped:
        r, f, s, g, a, b = s, g, r, f, b, a
    return PrimeContext(p, a, b, valuation(params.v, p), f, g, r, s, swapped, params)


# rank-parametrised multiplicities

@dataclass(frozen=True)
class Affine:
    """``const + coeff * e0``."""

    const: int
    coeff: int = 0

    def __call__(self, e0):
        return self.const + self.coeff * e0

    def __str__(self):
        c, k = self.const, self.coeff
        if k == 0:
            return str(c)
        var = "e0" if abs(k) == 1 else f"{abs(k)}e0"
        if k > 0:
            return var if c == 0 else f"{var}{'+' if c > 0 else '-'}{abs(c)}"
        return f"-{var}" if c == 0 else f"{c}-{var}"


@dataclass(frozen=True)
class Case:
    """One candidate shape: ``sum_i (Z/p^i)^{mult_i(e0)}`` for e0 in ``e0_range``."""

    label: str
    p: int
    multiplicities: tuple       # Affine for Z/p, Z/p^2, ...
    e0_range: tuple             # inclusive (lo, hi)

    def contains(self, e0):
        return self.e0_range[0] <= e0 <= self.e0_range[1]

    def at(self, e0):
        if not self.contains(e0):
            raise E0OutOfRange(f"e0={e0} outside {self.e0_range} for case {self.label}")
        return AbelianGroup({self.p: [m(e0) for m in self.multiplicities]})

    def render(self):
        terms = []
        for i, m in enumerate(self.multiplicities, 1):
            base = f"Z/{self.p ** i}"
            if m.coeff == 0:
                if m.const == 1:
                    terms.append(base)
                elif m.const:
                    terms.append(f"({base})^{m.const}")
            else:
                terms.append(f"({base})^{{{m}}}")
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return {
            "label": self.label,
            "multiplicities": [{"const": m.const, "e0": m.coeff} for m in self.multiplicities],
            "e0_range": list(self.e0_range),
            "text": self.render(),
        }


def _case(label, p, mults):
    # e0 range from nonnegativity of e0 and of every multiplicity
    lo, hi = 0, None
    for m in mults:
        if m.coeff > 0:
            lo = max(lo, -(m.const // m.coeff))
        elif m.coeff < 0:
            cap = m.const // (-m.coeff)
            hi = cap if hi is None else min(hi, cap)
    return Case(label, p, tuple(mults), (lo, hi))


# prediction variants

@dataclass(frozen=True)
class Exact:
    p: int
    group: AbelianGroup
    theorem: str
    e0: int | None = None       # p-rank implied by the theorem, when it is
    case: int | None = None     # trichotomy case when only one eigenvalue is divisible by p

    kind = "Exact"

    def render(self):
        return self.group.to_text()

    def to_json(self):
        return {
            "p": self.p, "variant": self.kind, "theorem": self.theorem,
            "group": self.group.to_json(), "text": self.render(),
            "e0": self.e0, "case": self.case, "cases": [], "e0_range": None,
        }


@dataclass(frozen=True)
class RankParametrized:
    p: int
    cases: tuple
    theorem: str

    kind = "RankParametrized"

    @property
    def e0_range(self):
        return (min(c.e0_range[0] for c in self.cases), max(c.e0_range[1] for c in self.cases))

    def candidates(self, e0):
        return [(c.label, c.at(e0)) for c in self.cases if c.contains(e0)]

    @property
    def collapsed(self):
        """True once every case has been narrowed to a single p-rank."""
        return all(c.e0_range[0] == c.e0_range[1] for c in self.cases)

    def render(self):
        if self.collapsed:
            shapes = [(c.label, c.at(c.e0_range[0]).to_text()) for c in self.cases]
        else:
            shapes = [(c.label, c.render()) for c in self.cases]
        if len(shapes) == 1:
            return shapes[0][1]
        return " or ".join(f"[{label}] {text}" for label, text in shapes)

    def to_json(self):
        group = None
        if self.collapsed and len(self.cases) == 1:
            group = self.cases[0].at(self.cases[0].e0_range[0]).to_json()
        return {
            "p": self.p, "variant": self.kind, "theorem": self.theorem,
            "group": group, "text": self.render(), "e0": None, "case": None,
            "cases": [c.to_json() for c in self.cases], "e0_range": list(self.e0_range),
        }


@dataclass(frozen=True)
class ConstraintsOnly:
    """No structure theorem applies; the multiplicities satisfy these relations only."""

    p: int
    ctx: PrimeContext

    kind = "ConstraintsOnly"
    theorem = "constraints"

    @property
    def cap(self):
        return self.ctx.a + self.ctx.b

    def equations(self):
        c = self.ctx
        return [
            f"e_0 + e_1 + ... + e_{self.cap} = f + g = {c.f + c.g}",
            f"e_1 + 2e_2 + ... + {self.cap}e_{self.cap} = a f + b g - gamma = {c.order_exponent}",
            f"e_i = 0 for i > a + b = {self.cap}",
            f"{c.f} <= e_0 + ... + e_{c.a} and {c.f} <= 1 + e_{c.a} + e_{c.a + 1} + ...",
            f"{c.g} <= e_0 + ... + e_{c.b} and {c.g} <= 1 + e_{c.b} + e_{c.b + 1} + ...",
            "not determined by the structure theorems",
        ]

    def check(self, e):
        c = self.ctx
        e = list(e)
        problems = []
        if sum(e) != c.f + c.g:
            problems.append(f"sum e_i = {sum(e)} != f + g = {c.f + c.g}")
        weighted = sum(i * x for i, x in enumerate(e))
        if weighted != c.order_exponent:
            problems.append(f"sum i e_i = {weighted} != {c.order_exponent}")
        if any(x for x in e[self.cap + 1:]):
            problems.append(f"elementary divisor above p^{self.cap}")
        local = PrimeLocalDivisors(c.p, tuple(e), 1)
        problems += multiplicity_bound_violations(local, c.a, c.f) + multiplicity_bound_violations(local, c.b, c.g)
        return problems

    def render(self):
        return "; ".join(self.equations())

    def to_json(self):
        c = self.ctx
        return {
            "p": self.p, "variant": self.kind, "theorem": self.theorem,
            "group": None, "text": self.render(), "e0": None, "case": None,
            "cases": [], "e0_range": None, "equations": self.equations(),
            "valuations": {"a": c.a, "b": c.b, "gamma": c.gamma, "f": c.f, "g": c.g},
        }


@dataclass(frozen=True)
class NotApplicable:
    p: int
    reason: str

    kind = "NotApplicable"
    theorem = None

    def render(self):
        return f"not applicable: {self.reason}"

    def to_json(self):
        return {
            "p": self.p, "variant": self.kind, "theorem": None, "group": None,
            "text": self.render(), "e0": None, "case": None, "cases": [],
            "e0_range": None, "reason": self.reason,
        }


# the structure theorems

def predict_theorem1(ctx):
    """p divides exactly one eigenvalue: the Sylow subgroup is forced."""
    p, b, gamma, g = ctx.p, ctx.b, ctx.gamma, ctx.g
    if ctx.a != 0 or b < 1:
        raise HypothesisViolation(f"needs p to divide exactly one eigenvalue (a={ctx.a}, b={b})")
    if gamma > b:
        raise InconsistentParameters(f"p^{gamma} divides v but only p^{b} divides the eigenvalue")
    counts = {b: g - 1}
    if b - gamma > 0:
        counts[b - gamma] = counts.get(b - gamma, 0) + 1
    e0 = ctx.f + 1 if gamma == b else ctx.f
    case = 1 if gamma == 0 else (3 if gamma == b else 2)
    return Exact(p, AbelianGroup.from_prime_powers(p, counts), "theorem1", e0=e0, case=case)


@dataclass(frozen=True)
class ValuationCase:
    case: int
    e0: int
    group: AbelianGroup


def corollary1_case(ctx):
    """Which of the three shapes occurs, with the p-rank it forces.

    Also checks the divisibility of mu that each case requires; a failure
    means the parameter set cannot be realised.
    """
    pred = predict_theorem1(ctx)
    p_divides_mu = ctx.params.mu % ctx.p == 0
    if p_divides_mu != (pred.case != 3):
        raise MuDivisibilityContradiction(
            f"case {pred.case} requires p {'|' if pred.case != 3 else 'does not divide'} mu"
        )
    return ValuationCase(pred.case, pred.e0, pred.group)


def predict_theorem3(ctx, e0=None):
    """p exactly divides both eigenvalues: the p-rank determines the group."""
    if (ctx.a, ctx.b) != (1, 1):
        raise HypothesisViolation(f"needs a = b = 1, got a={ctx.a}, b={ctx.b}")
    p, f, g, gamma = ctx.p, ctx.f, ctx.g, ctx.gamma
    case = _case("", p, [Affine(f + g + gamma, -2), Affine(-gamma, 1)])
    if case.e0_range[0] > case.e0_range[1]:
        raise InconsistentParameters(f"empty p-rank range {case.e0_range}")
    if e0 is None:
        return RankParametrized(p, (case,), "theorem3")
    if not case.contains(e0):
        raise E0OutOfRange(f"e0={e0} outside {case.e0_range}")
    return Exact(p, case.at(e0), "theorem3", e0=e0)


def predict_theorem4(ctx, e0=None):
    """p exactly divides one eigenvalue and p^2 the other: at most two shapes."""
    if (ctx.a, ctx.b) != (1, 2):
        raise HypothesisViolation(f"needs {{a, b}} = {{1, 2}}, got a={ctx.a}, b={ctx.b}")
    p, f, g, gamma = ctx.p, ctx.f, ctx.g, ctx.gamma
    cases = [_case("A", p, [Affine(f, -1), Affine(g + gamma, -1), Affine(-gamma, 1)])]
    if gamma > 0:
        cases.append(_case("B", p, [Affine(f + 1, -1), Affine(g + gamma - 2, -1),
                                    Affine(1 - gamma, 1)]))
    cases = [c for c in cases if c.e0_range[0] <= c.e0_range[1]]
    if not cases:
        raise InconsistentParameters("no admissible p-rank")
    if e0 is not None:
        cases = [Case(c.label, p, c.multiplicities, (e0, e0)) for c in cases if c.contains(e0)]
        if not cases:
            raise E0OutOfRange(f"e0={e0} fits neither case")
    return RankParametrized(p, tuple(cases), "theorem4")


# eigenvalue multiplicity bounds

@dataclass(frozen=True)
class EigenBound:
    eta_valuation: int
    exact: bool
    bound: int


def eigen_multiplicity_bound(e, i, exact):
    """Upper bound on the multiplicity of an integer eigenvalue with p-valuation ``i``.

    ``exact=False`` uses only ``p^i | eta``: ``1 + e_i + e_(i+1) + ...``.
    ``exact=True`` uses ``p^i || eta``: ``e_0 + ... + e_i``.
    """
    if exact:
        return EigenBound(i, True, sum(e.e[:i + 1]))
    return EigenBound(i, False, 1 + sum(e.e[i:]))


def multiplicity_bound_violations(e, i, multiplicity):
    out = []
    for exact in (False, True):
        bd = eigen_multiplicity_bound(e, i, exact)
        if multiplicity > bd.bound:
            out.append(f"multiplicity {multiplicity} exceeds {'exact' if exact else 'divisor'} "
                       f"bound {bd.bound} at valuation {i}")
    return out


# dispatch

def predict_prime(params, p, e0=None):
    ctx = prime_context(params, p)
    if ctx.order_exponent <= 0:
        return NotApplicable(p, "p does not divide the critical group order")
    if ctx.a == 0:
        if ctx.b == 0:
            raise InconsistentParameters(f"p={p} divides |K| but neither eigenvalue")
        return predict_theorem1(ctx)
    if (ctx.a, ctx.b) == (1, 1):
        return predict_theorem3(ctx, e0)
    if (ctx.a, ctx.b) == (1, 2):
        return predict_theorem4(ctx, e0)
    return ConstraintsOnly(p, ctx)


@dataclass(frozen=True)
class PredictionReport:
    params: SrgParams
    r: int
    f: int
    s: int
    g: int
    order: int
    entries: tuple      # (p, prediction) pairs, ascending p

    def prediction(self, p):
        return dict(self.entries)[p]

    def exact_group(self):
        """The whole critical group when every prime is Exact, else None."""
        total = AbelianGroup()
        for _, pred in self.entries:
            if not isinstance(pred, Exact):
                return None
            total = total + pred.group
        return total

    def to_json(self):
        return {
            "params": list(self.params),
            "spectrum": {"r": self.r, "f": self.f, "s": self.s, "g": self.g},
            "order": decimal(self.order),
            "exponent_bound": self.r * self.s,
            "predictions": [pred.to_json() for _, pred in self.entries],
        }


def predict_all(params, e0_hints=None):
    """One prediction per prime dividing the critical group order."""
    e0_hints = e0_hints or {}
    spec = laplacian_spectrum(params)
    if not spec.integral:
        raise ConferenceGraph(f"{params} is a conference graph")
    entries = []
    for p in prime_divisors(spec.r * spec.s):
        pred = predict_prime(params, p, e0_hints.get(p))
        if not isinstance(pred, NotApplicable):
            entries.append((p, pred))
    return PredictionReport(params, spec.r, spec.f, spec.s, spec.g,
                            critical_group_order(spec, params.v), tuple(entries))


# comparing against a computed group

@dataclass(frozen=True)
class Verdict:
    status: str                 # "Match", "MatchWithCase" or "Mismatch"
    case: str | None = None
    details: str = ""

    @property
    def ok(self):
        return self.status != "Mismatch"

    def __str__(self):
        s = self.status if self.case is None else f"{self.status}({self.case})"
        return f"{s}: {self.details}" if self.details else s


def e_list(computed, p, e0):
    """``(e_0, e_1, ...)`` from a p-rank and the group's Sylow subgroup."""
    return (e0,) + tuple(computed.multiplicities(p))


def consistency_check(prediction, computed, e0):
    p = prediction.p
    actual = computed.sylow(p)
    if isinstance(prediction, Exact):
        if actual != prediction.group:
            return Verdict("Mismatch", details=f"predicted {prediction.group}, computed {actual}")
        if prediction.e0 is not None and e0 is not None and e0 != prediction.e0:
            return Verdict("Mismatch", details=f"predicted p-rank {prediction.e0}, computed {e0}")
        return Verdict("Match")
    if isinstance(prediction, RankParametrized):
        hits = [label for label, grp in prediction.candidates(e0) if grp == actual]
        if len(hits) != 1:
            return Verdict("Mismatch", details=f"{actual} at e0={e0} matches cases {hits or 'none'}")
        if len(prediction.cases) == 1:
            return Verdict("Match")
        return Verdict("MatchWithCase", case=hits[0])
    if isinstance(prediction, ConstraintsOnly):
        problems = prediction.check(e_list(computed, p, e0))
        return Verdict("Mismatch", details="; ".join(problems)) if problems else Verdict("Match")
    if actual.is_trivial():
        return Verdict("Match")
    return Verdict("Mismatch", details=f"expected trivial Sylow subgroup, computed {actual}")


# nonexistence of srg(28, 9, 0, 4)

@dataclass
class NonexistenceReport:
    params: SrgParams
    r: int
    f: int
    s: int
    g: int
    absolute_bound: int             # m(m+3)/2 for the small multiplicity m
    absolute_bound_ok: bool
    p: int
    corollary_case: int
    rank: int                       # p-rank forced by the parameters
    kernel_dim: int
    lambda_zero_disjoint: bool
    neighbourhood_size: int         # |X| = |Y|
    remainder_size: int             # |Z|
    remainder_degree: int           # neighbours of z inside Z
    disjoint_edges: int
    pair_entry: int                 # +-entry of each kernel vector on its edge, mod p
    independent_vectors: int
    contradiction: bool
    steps: list = field(default_factory=list)

    def to_json(self):
        out = {k: v for k, v in self.__dict__.items() if k != "params"}
        out["params"] = list(self.params)
        return out


def nonexistence_28_report():
    """Parameter-only argument that no srg(28, 9, 0, 4) exists."""
    params = SrgParams(28, 9, 0, 4)
    v, k, lam, mu = params
    spec = laplacian_spectrum(params)
    small = min((spec.f, spec.r), (spec.g, spec.s))
    m, eig = small
    other = spec.r if eig == spec.s else spec.s
    bound = m * (m + 3) // 2
    feas = validate_params(params)
    steps = [
        f"Laplacian spectrum {spec.r}^{spec.f}, {spec.s}^{spec.g}",
        f"absolute bound: v={v} <= {m}({m}+3)/2 = {bound} is "
        f"{'satisfied' if feas.absolute_bound_ok else 'violated'}",
    ]
    # a prime dividing the eigenvalue of small multiplicity but not the other
    p = next(q for q in prime_divisors(eig) if other % q)
    ctx = prime_context(params, p)
    cor = corollary1_case(ctx)
    rank = cor.e0
    kernel_dim = v - rank
    steps.append(f"p={p}: corollary case {cor.case} gives p-rank {rank}, kernel dimension {kernel_dim}")

    # fix an edge xy; X, Y are the other neighbours of x and of y
    nbhd = k - 1
    disjoint = lam == 0
    z_size = v - 2 - 2 * nbhd if disjoint else None
    z_degree = k - 2 * mu           # z has mu neighbours in X and mu in Y
    steps.append(f"|X| = |Y| = {nbhd}; lambda = {lam} so X and Y are disjoint: {disjoint}")
    steps.append(f"|Z| = {z_size}; each z in Z has {k} - {mu} - {mu} = {z_degree} neighbour(s) in Z")
    matching = z_degree == 1 and z_size % 2 == 0
    edges = z_size // 2 + 1 if matching else 0
    steps.append(f"Z splits into {z_size // 2} disjoint edges; with xy that is {edges} disjoint edges")

    # mod p the identity (L - rI)(L - sI) = mu J becomes L (L - cI) = mu J
    c = (other % p)
    pair_entry = (k - c + 1) % p
    steps.append(f"mod {p}: L(L - {c}I) = {mu % p}J, so differences of columns of L - {c}I "
                 f"lie in ker L; on its edge each difference reads ({pair_entry}, {-pair_entry % p})")

    # restrict the edge vectors and the all-ones vector to the 2*edges edge coordinates
    rows = []
    for e in range(edges):
        for sign in (1, -1):
            rows.append([sign * pair_entry if j == e else 0 for j in range(edges)] + [1])
    independent = rank_mod_p(IntMatrix.from_rows(rows), p) if edges else 0
    steps.append(f"the {edges} edge vectors and the all-ones vector have rank {independent} mod {p}")
    contradiction = independent > kernel_dim
    steps.append(f"{independent} independent kernel vectors > dimension {kernel_dim}: "
                 f"{'contradiction' if contradiction else 'no contradiction'}")
    return NonexistenceReport(
        params, spec.r, spec.f, spec.s, spec.g, bound, feas.absolute_bound_ok, p, cor.case,
        rank, kernel_dim, disjoint, nbhd, z_size, z_degree, edges, pair_entry, independent,
        contradiction, steps,
    )
