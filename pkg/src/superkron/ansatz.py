"""The odd supersymmetric Kronecker ansatz and its identity checks.

The central object is the five-term odd element

    Phi(h, z1, z2 | mu, zeta_i, zeta_j; omega | A)
        = A1 (zeta_i - zeta_j) phi(h, z12)
        + A2 omega d1 phi(h, z12)
        + A3 zeta_i zeta_j omega d_tau phi(h, z12)
        + A4 zeta_i zeta_j mu d1 phi(h, z12)
        + (A5/2) (zeta_i + zeta_j) mu omega d1^2 phi(h, z12)

with free complex coefficients A1..A5 (the canonical choice is
A1 = A2 = A4 = A5 = 1, A3 = 2*pi*i; the truncated one sets A4 = A5 = 0).
The residual operations certify numerically for which coefficients the
super Fay identity, the two-parameter super heat equation and the
quasi-periodic boundary relations hold:

  * super Fay       <=>  A1*A5 = A2*A4
  * super heat(k,K) <=>  K*A2 = A1, K*A3 = 2*pi*i*A1, A4 = k*A1, K*A5 = k*A1
  * boundary        <=>  A1 = A2 = A4 = A5 and A3 = 2*pi*i*A1

Grassmann-valued argument shifts (z -> z + tau + 2*pi*i*zeta*omega) are
evaluated by exact Taylor expansion in the nilpotent soul, which
terminates because every soul squares to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Union

import numpy as np

from .elliptic import EllipticContext, Residual, kronecker_jet
from .errors import PoleProximity
from .grassmann import (
    MU1,
    MU2,
    OMEGA,
    SCALAR,
    ZETA1,
    ZETA2,
    ZETA3,
    Generator,
    GrassmannElement,
    gexp,
    gmul,
    gscale,
    gderiv,
)

TWO_PI_I = 2j * math.pi

OddLike = Union[Generator, GrassmannElement]


def odd_element(x: OddLike) -> GrassmannElement:
    """Coerce a generator (or element) to a degree-1 scalar element."""
    if isinstance(x, Generator):
        return GrassmannElement.from_generator(x)
    if any(m.bit_count() != 1 for m in x.terms):
        raise ValueError("expected an element linear in the generators")
    return x


@dataclass(frozen=True)
class AnsatzCoefficients:
    """The five free constants of the generalized ansatz."""

    a1: complex
    a2: complex
    a3: complex
    a4: complex
    a5: complex

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a5"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def fay_compatible(self, rtol: float = 1e-9) -> bool:
        """A1*A5 = A2*A4, the super Fay constraint."""
        lhs, rhs = self.a1 * self.a5, self.a2 * self.a4
        return abs(lhs - rhs) <= rtol * max(abs(lhs), abs(rhs), 1.0)

    def boundary_compatible(self, rtol: float = 1e-9) -> bool:
        """A1 = A2 = A4 = A5 and A3 = 2*pi*i*A1."""
        ref = max(abs(self.a1), 1.0)
        return (
            abs(self.a2 - self.a1) <= rtol * ref
            and abs(self.a4 - self.a1) <= rtol * ref
            and abs(self.a5 - self.a1) <= rtol * ref
            and abs(self.a3 - TWO_PI_I * self.a1) <= rtol * ref * abs(TWO_PI_I)
        )

    def scaled(self, lam: complex) -> AnsatzCoefficients:
        return AnsatzCoefficients(*(lam * a for a in self.astuple()))

    def astuple(self) -> tuple[complex, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a5)


CANONICAL = AnsatzCoefficients(1.0, 1.0, TWO_PI_I, 1.0, 1.0)
TRUNCATED = AnsatzCoefficients(1.0, 1.0, TWO_PI_I, 0.0, 0.0)


@dataclass(frozen=True)
class HeatParams:
    """The two free constants of the generalized heat equation."""

    k: complex = 1.0
    kappa: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "k", complex(self.k))
        object.__setattr__(self, "kappa", complex(self.kappa))

    def heat_compatible(self, a: AnsatzCoefficients, rtol: float = 1e-9) -> bool:
        """K*A2 = A1, K*A3 = 2*pi*i*A1, A4 = k*A1, K*A5 = k*A1."""
        ref = max(abs(a.a1), 1.0)
        return (
            abs(self.kappa * a.a2 - a.a1) <= rtol * ref
            and abs(self.kappa * a.a3 - TWO_PI_I * a.a1) <= rtol * ref * abs(TWO_PI_I)
            and abs(a.a4 - self.k * a.a1) <= rtol * ref * max(abs(self.k), 1.0)
            and abs(self.kappa * a.a5 - self.k * a.a1) <= rtol * ref * max(abs(self.k), 1.0)
        )


@dataclass(frozen=True)
class SuperArgument:
    """A point on the super curve: body, even nilpotent soul, odd partner."""

    z: complex
    zeta: GrassmannElement
    z_soul: GrassmannElement = field(default_factory=GrassmannElement.zero)

    def __post_init__(self):
        if any(m.bit_count() != 1 for m in self.zeta.terms):
            raise ValueError("zeta must be linear in the generators")
        if any(m.bit_count() & 1 or m == 0 for m in self.z_soul.terms):
            raise ValueError("z_soul must have even positive degree only")

    @classmethod
    def at(cls, z: complex, zeta: OddLike) -> SuperArgument:
        return cls(complex(z), odd_element(zeta))


# -- symbolic five-term representation ---------------------------------
#
# A list of (prefactor, coefficient, derivative order) triples, with the
# prefactor a scalar Grassmann element and the order a (m, n, t) bump on
# phi(h, z12).  Derivatives and Grassmann multiplications act on the
# list; evaluation contracts it against one Kronecker jet.


@dataclass(frozen=True)
class _Term:
    pref: GrassmannElement
    coeff: complex
    dm: int = 0
    dn: int = 0
    dt: int = 0


def _drop_null(terms: Iterable[_Term]) -> list[_Term]:
    return [t for t in terms if t.pref.terms and t.coeff != 0]


def _ansatz_terms(a: AnsatzCoefficients, zi: GrassmannElement, zj: GrassmannElement,
                  mu: GrassmannElement) -> list[_Term]:
    om = GrassmannElement.from_generator(OMEGA)
    return _drop_null(
        [
            _Term(zi - zj, a.a1),
            _Term(om, a.a2, dm=1),
            _Term(gmul(gmul(zi, zj), om), a.a3, dt=1),
            _Term(gmul(gmul(zi, zj), mu), a.a4, dm=1),
            _Term(gmul(gmul(zi + zj, mu), om), a.a5 / 2.0, dm=2),
        ]
    )


def _d_h(terms: list[_Term]) -> list[_Term]:
    return [replace(t, dm=t.dm + 1) for t in terms]


def _d_z1(terms: list[_Term]) -> list[_Term]:
    return [replace(t, dn=t.dn + 1) for t in terms]


def _d_tau(terms: list[_Term]) -> list[_Term]:
    return [replace(t, dt=t.dt + 1) for t in terms]


def _lmul(e: GrassmannElement, terms: list[_Term]) -> list[_Term]:
    return _drop_null(replace(t, pref=gmul(e, t.pref)) for t in terms)


def _deriv(g: Generator, terms: list[_Term]) -> list[_Term]:
    return _drop_null(replace(t, pref=gderiv(t.pref, g)) for t in terms)


def _scale(c: complex, terms: list[_Term]) -> list[_Term]:
    return _drop_null(replace(t, coeff=c * t.coeff) for t in terms)


def _box(groups: list[list[_Term]]) -> tuple[int, int, int]:
    dm = dn = dt = 0
    for terms in groups:
        for t in terms:
            dm, dn, dt = max(dm, t.dm), max(dn, t.dn), max(dt, t.dt)
    return dm, dn, dt


def _eval_terms(terms: list[_Term], jet: np.ndarray) -> GrassmannElement:
    out = GrassmannElement.zero(SCALAR)
    for t in terms:
        fac = math.factorial(t.dm) * math.factorial(t.dn) * math.factorial(t.dt)
        out = out + gscale(t.coeff * fac * jet[t.dm, t.dn, t.dt], t.pref)
    return out


# -- the ansatz and its residuals --------------------------------------


def super_phi(ctx: EllipticContext, a: AnsatzCoefficients, h: complex, mu: OddLike,
              p1: SuperArgument, p2: SuperArgument) -> GrassmannElement:
    """Evaluate the five-term ansatz at two super points.

    Nilpotent z-souls are absorbed by Taylor expansion of phi in the
    soul difference; every physically arising soul contains omega, so
    the expansion is exact at first order, with the second order kept
    for safety.
    """
    mu_e = odd_element(mu)
    terms = _ansatz_terms(a, p1.zeta, p2.zeta, mu_e)

    soul = p1.z_soul - p2.z_soul
    if soul.terms:
        expanded: list[_Term] = list(terms)
        power = soul
        for j in range(1, 3):
            expanded.extend(
                replace(t, pref=gmul(t.pref, power), coeff=t.coeff / math.factorial(j),
                        dn=t.dn + j)
                for t in terms
            )
            power = gmul(power, soul)
            if not power.terms:
                break
        else:
            if power.terms:
                raise ValueError("soul nilpotency depth exceeds the supported z-order")
        terms = _drop_null(expanded)

    jet = kronecker_jet(ctx, h, p1.z - p2.z, _box([terms]))
    return _eval_terms(terms, jet)


def super_fay_residual(ctx: EllipticContext, a: AnsatzCoefficients,
                       h1: complex, h2: complex, mu1: OddLike, mu2: OddLike,
                       z1: complex, z2: complex, z3: complex) -> Residual:
    """Three-product cyclic sum of the super Fay identity.

    Vanishes coefficient-wise iff A1*A5 = A2*A4.  The scale is the
    largest coefficient magnitude among the three products before
    cancellation.
    """
    m1, m2 = odd_element(mu1), odd_element(mu2)
    pts = {
        1: SuperArgument.at(z1, ZETA1),
        2: SuperArgument.at(z2, ZETA2),
        3: SuperArgument.at(z3, ZETA3),
    }

    def phi(h, mu, i, j):
        return super_phi(ctx, a, h, mu, pts[i], pts[j])

    t1 = gmul(phi(h1, m1, 1, 2), phi(h2, m2, 2, 3))
    t2 = gmul(phi(-h2, -m2, 3, 1), phi(h1 - h2, m1 - m2, 1, 2))
    t3 = gmul(phi(h2 - h1, m2 - m1, 2, 3), phi(-h1, -m1, 3, 1))
    value = t1 + t2 + t3
    return Residual(value, max(t.max_abs() for t in (t1, t2, t3)))


def super_heat_residual(ctx: EllipticContext, a: AnsatzCoefficients, params: HeatParams,
                        h: complex, mu: OddLike, z1: complex, z2: complex,
                        zeta1: Generator = ZETA1, zeta2: Generator = ZETA2) -> Residual:
    """Residual of the generalized super heat equation

        (K d_omega + 2*pi*i (zeta1+zeta2) d_tau) Phi
            = (d_zeta1 + zeta1 d_z1 - (k/2) mu d_h) d_h Phi.

    Odd derivatives act on the Grassmann prefactors, the even ones on
    the coefficient functions analytically.
    """
    z1e = GrassmannElement.from_generator(zeta1)
    z2e = GrassmannElement.from_generator(zeta2)
    mu_e = odd_element(mu)
    base = _ansatz_terms(a, z1e, z2e, mu_e)

    lhs1 = _scale(params.kappa, _deriv(OMEGA, base))
    lhs2 = _lmul(TWO_PI_I * (z1e + z2e), _d_tau(base))
    dh = _d_h(base)
    rhs1 = _deriv(zeta1, dh)
    rhs2 = _lmul(z1e, _d_z1(dh))
    rhs3 = _scale(-params.k / 2.0, _lmul(mu_e, _d_h(dh)))

    groups = [lhs1, lhs2, rhs1, rhs2, rhs3]
    jet = kronecker_jet(ctx, h, z1 - z2, _box(groups))
    parts = [_eval_terms(g, jet) for g in groups]
    value = parts[0] + parts[1] - parts[2] - parts[3] - parts[4]
    return Residual(value, max(p.max_abs() for p in parts))


def super_boundary_residuals(ctx: EllipticContext, a: AnsatzCoefficients, h: complex,
                             mu: OddLike, z1: complex, z2: complex,
                             zeta1: Generator = ZETA1, zeta2: Generator = ZETA2,
                             ) -> tuple[Residual, Residual, Residual]:
    """Residuals of the three quasi-periodicity relations.

    Relation 1: invariance under unit shifts of z1 and of z2 (their two
    differences are summed into one residual).  Relations 2 and 3 shift
    z1 (resp. z2) by tau + 2*pi*i*zeta*omega with zeta -> zeta +
    2*pi*i*omega against the factors exp(-+2*pi*i(h + mu*zeta +-
    pi*i*mu*omega)).  All three vanish iff A1 = A2 = A4 = A5 and
    A3 = 2*pi*i*A1.
    """
    mu_e = odd_element(mu)
    z1e = GrassmannElement.from_generator(zeta1)
    z2e = GrassmannElement.from_generator(zeta2)
    om = GrassmannElement.from_generator(OMEGA)
    tau = ctx.tau

    p1 = SuperArgument(z1, z1e)
    p2 = SuperArgument(z2, z2e)
    base = super_phi(ctx, a, h, mu_e, p1, p2)
    base_mag = base.max_abs()

    d_unit1 = super_phi(ctx, a, h, mu_e, SuperArgument(z1 + 1, z1e), p2) - base
    d_unit2 = super_phi(ctx, a, h, mu_e, p1, SuperArgument(z2 + 1, z2e)) - base
    r_unit = Residual(d_unit1 + d_unit2, base_mag)

    # In the exponents the odd products are taken as zeta*mu and
    # omega*mu; this ordering makes the two factors exact inverses of
    # each other (under zeta1 <-> zeta2) and is the unique choice
    # compatible with the canonical coefficients.
    soul1 = gscale(TWO_PI_I, gmul(z1e, om))
    shifted1 = SuperArgument(z1 + tau, z1e + gscale(TWO_PI_I, om), soul1)
    lhs1 = super_phi(ctx, a, h, mu_e, shifted1, p2)
    expo1 = gscale(
        -TWO_PI_I,
        GrassmannElement.scalar(h) + gmul(z1e, mu_e) + gscale(1j * math.pi, gmul(om, mu_e)),
    )
    rhs1 = gmul(gexp(expo1), base)
    r_tau1 = Residual(lhs1 - rhs1, max(lhs1.max_abs(), rhs1.max_abs()))

    soul2 = gscale(TWO_PI_I, gmul(z2e, om))
    shifted2 = SuperArgument(z2 + tau, z2e + gscale(TWO_PI_I, om), soul2)
    lhs2 = super_phi(ctx, a, h, mu_e, p1, shifted2)
    expo2 = gscale(
        TWO_PI_I,
        GrassmannElement.scalar(h) + gmul(z2e, mu_e) + gscale(1j * math.pi, gmul(om, mu_e)),
    )
    rhs2 = gmul(gexp(expo2), base)
    r_tau2 = Residual(lhs2 - rhs2, max(lhs2.max_abs(), rhs2.max_abs()))

    return r_unit, r_tau1, r_tau2


# -- coefficient-space scanner ------------------------------------------

SCAN_CHECKS = ("fay", "heat", "boundary")
SCAN_FAMILIES = ("random", "fay", "heat", "boundary")


@dataclass(frozen=True)
class ScanSample:
    """One scanned coefficient point with its three residual verdicts."""

    index: int
    coeffs: tuple[complex, ...]
    heat_params: tuple[complex, complex]
    residuals: dict[str, float]
    passes: dict[str, bool]
    predicates: dict[str, bool]


@dataclass(frozen=True)
class ScanReport:
    """Empirical map of the coefficient constraints.

    For each family of coefficient points (unconstrained random points
    and points projected onto the Fay, heat and boundary constraint
    varieties) records per-sample relative residuals of all three
    identity checks, so the constraint boundary can be read off the
    pass tabulation.
    """

    seed: int
    n_samples: int
    tau: complex
    tol: float
    resampled: int
    families: dict[str, list[ScanSample]]

    def pass_counts(self) -> dict[str, dict[str, int]]:
        return {
            fam: {c: sum(s.passes[c] for s in samples) for c in SCAN_CHECKS}
            for fam, samples in self.families.items()
        }

    def to_jsonable(self) -> dict:
        def cx(v: complex) -> list[float]:
            return [float(v.real), float(v.imag)]

        return {
            "seed": self.seed,
            "n_samples": self.n_samples,
            "tau": cx(self.tau),
            "tol": self.tol,
            "resampled": self.resampled,
            "pass_counts": self.pass_counts(),
            "families": {
                fam: [
                    {
                        "index": s.index,
                        "coeffs": [cx(c) for c in s.coeffs],
                        "heat_params": [cx(c) for c in s.heat_params],
                        "residuals": s.residuals,
                        "passes": s.passes,
                        "predicates": s.predicates,
                    }
                    for s in samples
                ]
                for fam, samples in self.families.items()
            },
        }


def _draw_regular_points(ctx: EllipticContext, rng, count: int) -> tuple[list[complex], int]:
    """Uniform points in the fundamental cell, rejecting pole-proximate
    draws; returns the points and the rejection count."""
    from .elliptic import lattice_distance

    out: list[complex] = []
    rejected = 0
    while len(out) < count:
        z = rng.uniform(0.0, 1.0) + rng.uniform(0.0, 1.0) * ctx.tau
        if lattice_distance(z, ctx.tau) <= ctx.pole_margin:
            rejected += 1
            continue
        out.append(complex(z))
    return out, rejected


def constraint_scan(ctx: EllipticContext, n_samples: int, seed: int) -> ScanReport:
    """Seeded scan of the coefficient space.

    Draws coefficient points at random and projected onto each
    constraint family, evaluates the Fay, heat and boundary residuals
    for every point, and tabulates which pass at ctx.tol.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)

    def rc(scale: float = 1.0) -> complex:
        return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))

    def away_from_zero(scale: float = 1.0, floor: float = 0.25) -> complex:
        while True:
            c = rc(scale)
            if abs(c) >= floor:
                return c

    def draw_family(fam: str) -> tuple[AnsatzCoefficients, HeatParams]:
        if fam == "random":
            return AnsatzCoefficients(rc(), rc(), rc(6.4), rc(), rc()), HeatParams(1.0, 1.0)
        if fam == "fay":
            a1, a2, a4 = away_from_zero(), rc(), rc()
            return AnsatzCoefficients(a1, a2, rc(6.4), a4, a2 * a4 / a1), HeatParams(1.0, 1.0)
        if fam == "heat":
            k, kap, a1 = rc(), away_from_zero(), away_from_zero()
            coeffs = AnsatzCoefficients(
                a1, a1 / kap, TWO_PI_I * a1 / kap, k * a1, k * a1 / kap
            )
            return coeffs, HeatParams(k, kap)
        c = away_from_zero()
        return AnsatzCoefficients(c, c, TWO_PI_I * c, c, c), HeatParams(1.0, 1.0)

    resampled = 0
    families: dict[str, list[ScanSample]] = {}
    for fam in SCAN_FAMILIES:
        samples: list[ScanSample] = []
        for idx in range(n_samples):
            coeffs, params = draw_family(fam)
            while True:
                try:
                    pts, rej = _draw_regular_points(ctx, rng, 5)
                    resampled += rej
                    h1, h2 = pts[0], pts[1]
                    z1, z2, z3 = pts[2], pts[3], pts[4]
                    r_fay = super_fay_residual(ctx, coeffs, h1, h2, MU1, MU2, z1, z2, z3)
                    r_heat = super_heat_residual(ctx, coeffs, params, h1, MU1, z1, z2)
                    r_bnd = super_boundary_residuals(ctx, coeffs, h1, MU1, z1, z2)
                    break
                except PoleProximity:
                    resampled += 1
            rel = {
                "fay": float(r_fay.value.max_abs() / r_fay.scale),
                "heat": float(r_heat.value.max_abs() / r_heat.scale),
                "boundary": float(max(r.value.max_abs() / r.scale for r in r_bnd)),
            }
            samples.append(
                ScanSample(
                    index=idx,
                    coeffs=coeffs.astuple(),
                    heat_params=(params.k, params.kappa),
                    residuals=rel,
                    passes={c: bool(rel[c] < ctx.tol) for c in SCAN_CHECKS},
                    predicates={
                        "fay_compatible": coeffs.fay_compatible(),
                        "heat_compatible": params.heat_compatible(coeffs),
                        "boundary_compatible": coeffs.boundary_compatible(),
                    },
                )
            )
        families[fam] = samples
    return ScanReport(
        seed=seed,
        n_samples=n_samples,
        tau=complex(ctx.tau),
        tol=ctx.tol,
        resampled=resampled,
        families=families,
    )
