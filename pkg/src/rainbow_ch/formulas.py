"""Closed-form edge counts, the bound polynomials f/h/g/q1 and their shift identities.

Everything is exact integer arithmetic.  Interval endpoints of the piecewise
formulas have the shape ``(p + sigma*sqrt(D)) / q`` and are compared against
integers without floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

XI_PLUS_TWO_NOTE = (
    "Xi is taken as the bare maximum of |E_i(n,t)| (equal to the piecewise formula); "
    "the anti-Ramsey conjecture value is Xi + 2. The construction section literally "
    "writes Xi = max|E_i| + 2, which would double-count the +2."
)


def binom2(k: int) -> int:
    """k(k-1)/2, the polynomial extension of C(k, 2)."""
    return k * (k - 1) // 2


def ceil_half(k: int) -> int:
    return -(-k // 2)


# -- partition statistics ---------------------------------------------------


@dataclass(frozen=True)
class PartitionStats:
    """Counters of an ideal partition: triangle classes, matching size, singletons."""

    tau1: int
    tau2: int
    tau3: int
    tau4: int
    mu: int
    iota: int

    def __post_init__(self):
        for name in ("tau1", "tau2", "tau3", "tau4", "mu", "iota"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")

    @property
    def triangles(self) -> int:
        return self.tau1 + self.tau2 + self.tau3 + self.tau4

    @property
    def n(self) -> int:
        """Vertex count implied by the counters (3 per triangle, 2 per edge)."""
        return 3 * self.triangles + 2 * self.mu + self.iota

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.tau1, self.tau2, self.tau3, self.tau4, self.mu, self.iota)

    def shifted(self, delta: tuple[int, ...]) -> PartitionStats:
        return PartitionStats(*(a + d for a, d in zip(self.as_tuple(), delta)))


def _stats(s) -> tuple[int, int, int, int, int, int]:
    return s.as_tuple() if isinstance(s, PartitionStats) else tuple(s)


def poly_f(s) -> int:
    t1, t2, t3, t4, mu, io = _stats(s)
    return (
        4 * mu * t1 + 2 * io * t1 + 7 * binom2(t1) + 3 * t1
        + 2 * io * t2 + 8 * binom2(t2) + 3 * t2
        + 8 * binom2(t3) + 8 * t3 * t4 + 3 * t3
        + 7 * t1 * t2 + (2 + 3 * mu) * t2
        + 7 * t1 * (t3 + t4) + (3 + 3 * mu) * t3
        + 8 * t2 * (t3 + t4) + (2 + io) * t3
    )


def _h_tail(t4: int, mu: int, io: int) -> int:
    return io * mu + mu * mu + (3 * mu + 3) * t4 + (io + 2) * t4


def poly_h(s) -> int:
    t1, t2, t3, t4, mu, io = st = _stats(s)
    return poly_f(st) + _h_tail(t4, mu, io) + binom2(3 * t4)


def poly_g(s) -> int:
    """Sparse-T4 variant of h; may be negative because of the -28 term."""
    t1, t2, t3, t4, mu, io = st = _stats(s)
    return poly_f(st) + _h_tail(t4, mu, io) + 8 * binom2(t4) + 10 * t4 - 28


def poly_q1(s) -> int:
    st = _stats(s)
    return poly_h(st) - st[4] - st[0]


# -- shift identities --------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    key: int
    poly: str
    shift: tuple[int, int, int, int, int, int]
    # twice the right-hand side, as a function of (stats, x)
    rhs2: object
    label: str


IDENTITIES: dict[int, Identity] = {
    ident.key: ident
    for ident in (
        Identity(1, "h", (-1, 1, 0, 0, 0, 0),
                 lambda s, x: x * (x + 2 * s[1] + 2 * s[2] + 2 * s[3] - 2 * s[4] + 3),
                 "h(t1-x,t2+x,..)-h = x(x+2t2+2t3+2t4-2mu+3)/2"),
        Identity(2, "h", (1, 0, -1, 0, 0, 0),
                 lambda s, x: x * (x - 2 * s[1] - 2 * s[2] - 2 * s[3] + 2 * s[4] + 2 * s[5] - 9),
                 "h(t1+x,t2,t3-x,..)-h = x(x-2t2-2t3-2t4+2mu+2iota-9)/2"),
        Identity(3, "h", (0, 1, -1, 0, 0, 0),
                 lambda s, x: 2 * (s[5] - 3) * x,
                 "h(t1,t2+x,t3-x,..)-h = (iota-3)x"),
        Identity(4, "h", (1, 0, 0, -1, 0, 0),
                 lambda s, x: 2 * x * (x - s[1] - s[2] - 2 * s[3] + s[4] + s[5] - 4),
                 "h(t1+x,..,t4-x,..)-h = x(x-t2-t3-2t4+mu+iota-4)"),
        Identity(5, "h", (0, 1, 0, -1, 0, 0),
                 lambda s, x: x * (x - 2 * s[3] + 2 * s[5] - 5),
                 "h(t1,t2+x,t3,t4-x,..)-h = x(x-2t4+2iota-5)/2"),
        Identity(6, "h", (0, 0, -1, 1, 0, 0),
                 lambda s, x: x * (x + 2 * s[3] - 1),
                 "h(t1,t2,t3-x,t4+x,..)-h = x(x+2t4-1)/2"),
        Identity(7, "g", (0, 1, 0, -1, 0, 0),
                 lambda s, x: 2 * (s[5] - 10) * x,
                 "g(t1,t2+x,t3,t4-x,..)-g = (iota-10)x"),
        Identity(8, "g", (0, 0, -1, 1, 0, 0),
                 lambda s, x: 14 * x,
                 "g(t1,t2,t3-x,t4+x,..)-g = 7x"),
    )
}


@dataclass(frozen=True)
class IdentityVerdict:
    key: int
    holds: bool
    lhs: Fraction
    rhs: Fraction


def check_identity(key: int, s, x: int) -> IdentityVerdict:
    """Evaluate both sides of shift identity ``key`` at stats ``s`` and shift ``x``."""
    ident = IDENTITIES[key]
    st = _stats(s)
    shifted = tuple(a + x * d for a, d in zip(st, ident.shift))
    if min(st) < 0 or min(shifted) < 0:
        raise ValueError(f"shift x={x} makes an argument negative: {shifted}")
    poly = poly_h if ident.poly == "h" else poly_g
    lhs = poly(shifted) - poly(st)
    rhs2 = ident.rhs2(st, x)
    return IdentityVerdict(key, 2 * lhs == rhs2, Fraction(lhs), Fraction(rhs2, 2))


def sweep_identities(points: int = 10**4, seed: int = 0, hi: int = 60) -> dict[int, list]:
    """Check every identity at ``points`` random admissible (stats, x).

    Stats are uniform on ``[0, hi]``; ``x`` ranges over every value keeping the
    shifted arguments non-negative (negative shifts included).  Returns the
    failing verdicts per identity (empty lists when all hold).
    """
    import random

    rng = random.Random(seed)
    out: dict[int, list] = {}
    for key, ident in IDENTITIES.items():
        inc = ident.shift.index(1)
        dec = ident.shift.index(-1)
        bad = []
        for _ in range(points):
            st = [rng.randint(0, hi) for _ in range(6)]
            x = rng.randint(-st[inc], st[dec])
            v = check_identity(key, st, x)
            if not v.holds:
                bad.append((tuple(st), x, v))
        out[key] = bad
    return out


# -- closed-form construction sizes -----------------------------------------


def e1(n: int, t: int) -> int:
    return binom2(t) + t * (n - t) + ceil_half(n - t) * ((n - t) // 2)


def e2(n: int, t: int) -> int:
    return binom2(2 * t + 1) + ceil_half(n) * (n // 2)


def e3(n: int, t: int) -> int:
    return binom2(2 * t + 2) + (2 * t + 2) * (n - 2 * t - 2)


def e4(n: int, t: int) -> int:
    return binom2(6 * t - n + 6) + (n - 3 * t - 3) * (3 * t + 3)


def e5(n: int, t: int) -> int:
    return binom2(3 * t + 5) + (n - 3 * t - 6)


def gamma3(n: int, t: int) -> int:
    return binom2(2 * t + 1) + (2 * t + 1) * (n - 2 * t - 1)


def gamma4(n: int, t: int) -> int:
    return binom2(6 * t - n + 4) + (3 * t + 2) * (n - 3 * t - 2)


CLOSED_FORMS = {
    "E1": e1, "E2": e2, "E3": e3, "E4": e4, "E5": e5,
    "G1": e1, "G2": e2, "G3": gamma3, "G4": gamma4,
}


def construction_violations(family: str, n: int, t: int) -> list[str]:
    """Part-size constraints of ``family`` at ``(n, t)`` that fail; empty when valid."""
    if family not in CLOSED_FORMS:
        raise ValueError(f"unknown family {family!r}")
    checks = {
        "E1": [("n - t >= 0", n - t)],
        "E2": [("ceil(n/2) - 2t - 1 >= 0", ceil_half(n) - 2 * t - 1)],
        "E3": [("n - 2t - 2 >= 0", n - 2 * t - 2)],
        "E4": [("6t - n + 6 >= 0", 6 * t - n + 6), ("n - 3t - 3 >= 0", n - 3 * t - 3)],
        "E5": [("n - 3t - 6 >= 0", n - 3 * t - 6)],
        "G3": [("n - 2t - 1 >= 0", n - 2 * t - 1)],
        "G4": [("6t - n + 4 >= 0", 6 * t - n + 4), ("n - 3t - 2 >= 0", n - 3 * t - 2)],
    }
    checks["G1"], checks["G2"] = checks["E1"], checks["E2"]
    out = [] if n >= 1 and t >= 0 else [f"need n >= 1 and t >= 0 (n={n}, t={t})"]
    out.extend(f"{text} fails ({value})" for text, value in checks[family] if value < 0)
    return out


# -- exact comparisons against surd endpoints -------------------------------


@dataclass(frozen=True)
class Endpoint:
    """The real number ``(p + sign*sqrt(disc)) / q`` with ``q > 0``."""

    p: int
    sign: int
    disc: int
    q: int

    def compare(self, t: int) -> int:
        """Sign of ``t - self`` (-1, 0 or 1), computed exactly."""
        a = self.q * t - self.p
        if self.sign == 0 or self.disc == 0:
            return (a > 0) - (a < 0)
        if self.sign > 0:
            # a - sqrt(D)
            if a < 0:
                return -1
            return (a * a > self.disc) - (a * a < self.disc)
        # a + sqrt(D)
        if a >= 0:
            return 1
        return (self.disc > a * a) - (self.disc < a * a)

    def floor(self) -> int:
        root = isqrt(self.disc) if self.sign else 0
        guess = (self.p + self.sign * root) // self.q
        while self.compare(guess + 1) <= 0:
            guess += 1
        while self.compare(guess) > 0:
            guess -= 1
        return guess

    def as_float(self) -> float:
        return (self.p + self.sign * self.disc ** 0.5) / self.q


def _xi_endpoints(n: int) -> list[Endpoint]:
    return [
        Endpoint(0, 0, 0, 1),
        Endpoint(2 * n - 6, 0, 0, 9),
        Endpoint(n - 3, -1, 2 * n - 3, 4),
        Endpoint(5 * n - 20, 1, 3 * n * n - 2 * n + 4, 22),
        Endpoint(2 * n - 3, -1, 16 * n - 7, 6),
        Endpoint(n, 0, 0, 3),
    ]


def _abhp_endpoints(n: int) -> list[Endpoint]:
    return [
        Endpoint(0, 0, 0, 1),
        Endpoint(2 * n - 6, 0, 0, 9),
        Endpoint(n - 1, 0, 0, 4),
        Endpoint(5 * n - 12, 1, 3 * n * n - 10 * n + 12, 22),
        Endpoint(n, 0, 0, 3),
    ]


XI_BRANCHES = [("E1", e1), ("E2", e2), ("E3", e3), ("E4", e4), ("E5", e5)]
ABHP_BRANCHES = [("G1", e1), ("G2", e2), ("G3", gamma3), ("G4", gamma4)]


@dataclass(frozen=True)
class PiecewiseValue:
    value: int
    branch: int
    branches: tuple[int, ...]
    tie: bool
    notes: tuple[str, ...] = field(default=())

    def __int__(self) -> int:
        return self.value


def branches_containing(endpoints: list[Endpoint], t: int) -> list[int]:
    """1-based indices of the closed intervals ``[e_k, e_{k+1}]`` that contain t."""
    out = []
    for k in range(len(endpoints) - 1):
        if endpoints[k].compare(t) >= 0 and endpoints[k + 1].compare(t) <= 0:
            out.append(k + 1)
    return out


def _piecewise(n, t, endpoints, table, check_validity, notes=()) -> PiecewiseValue:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    hits = branches_containing(endpoints, t)
    if not hits:
        raise ValueError(f"t={t} outside [0, n/3] for n={n}")
    values = {}
    problems = []
    for k in hits:
        family, form = table[k - 1]
        bad = construction_violations(family, n, t)
        if bad and check_validity:
            problems.append(f"branch {k} ({family}): " + "; ".join(bad))
            continue
        values[k] = form(n, t)
    if not values:
        raise ValueError(f"no valid branch at n={n}, t={t}: " + " | ".join(problems))
    best = max(values, key=lambda k: (values[k], -k))
    return PiecewiseValue(values[best], best, tuple(hits), len(hits) > 1, tuple(notes))


def xi_piecewise(n: int, t: int, *, check_validity: bool = True) -> PiecewiseValue:
    """Piecewise conjectured extremal size; the anti-Ramsey value is this plus two."""
    return _piecewise(n, t, _xi_endpoints(n), XI_BRANCHES, check_validity, (XI_PLUS_TWO_NOTE,))


def ex_abhp(n: int, t: int, *, check_validity: bool = True) -> PiecewiseValue:
    """Turan number of (t+1) disjoint triangles for large n, by branch."""
    return _piecewise(n, t, _abhp_endpoints(n), ABHP_BRANCHES, check_validity)


def xi_branch_value(k: int, n: int, t: int) -> int:
    return XI_BRANCHES[k - 1][1](n, t)


def distance_to_boundaries_at_least(n: int, t: int, d: int = 2, endpoints=None) -> bool:
    """True when ``|t - b| >= d`` for every endpoint ``b`` of the piecewise intervals."""
    eps = _xi_endpoints(n) if endpoints is None else endpoints
    return all(e.compare(t - d) >= 0 or e.compare(t + d) <= 0 for e in eps)


def first_interval_limit(n: int) -> Fraction:
    """Largest t covered by the proven first-interval theorem: (2n-6)/9 - 2."""
    return Fraction(2 * n - 6, 9) - 2


def ar_first_interval(n: int, t: int, *, override: bool = False) -> int:
    """Anti-Ramsey number of (t+2) disjoint triangles on the proven range.

    Outside ``1 <= t <= (2n-6)/9 - 2`` a ValueError is raised unless
    ``override`` is set, in which case the same expression is evaluated.
    """
    if not override and not (1 <= t <= first_interval_limit(n)):
        raise ValueError(
            f"t={t} outside the proven range [1, (2n-6)/9 - 2] for n={n}; pass override=True"
        )
    return e1(n, t) + 2


@dataclass(frozen=True)
class ProblemParams:
    n: int
    t: int

    def __post_init__(self):
        if self.n < 3 or self.t < 0 or 3 * self.t > self.n:
            raise ValueError(f"need n >= 3 and 0 <= t <= n/3, got n={self.n}, t={self.t}")

    @property
    def N(self) -> int:
        """ex(n, (t+1)K3) + 2 via the large-n Turan formula."""
        return ex_abhp(self.n, self.t).value + 2
