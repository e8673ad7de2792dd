"""Reversibility and integrability conditions for the quadratic family.

Covers three related surfaces:

* the equivariance test A F(x) = z F(Ax) for the cyclic-permutation matrix
  A = [[0, alpha, 0], [0, 0, beta], [gamma, 0, 0]] with alpha beta gamma = 1,
  available for any concrete system of the family;
* the nine frozen generators of the reversibility variety of the quadratic
  family (its Zariski closure), evaluated exactly at points;
* the nine frozen component ideals J1..J9 of the restricted quadratic
  subfamily (b001 = c100 = 0, b010 = 1), with exact seeded samplers that
  solve each ideal's dependent parameters from a small rational pool.

The generator lists are data, not computed: reproducing them would need
Groebner machinery that is out of scope here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields

from .cyclotomic import ONE, Rational, ZERO, ZETA, ZETA2, CycQ
from .polyring import ParamPoly, grlex_key
from .quantities import quantities_direct_values
from .sysspec import SpecError, SystemSpec, concrete_field, quadratic_family

__all__ = [
    "RevMatrix",
    "QuadPoint",
    "IZETA_GENERATORS",
    "COMPONENT_GENERATORS",
    "LINEARIZABLE_COMPONENTS",
    "CONJECTURE_COMPONENTS",
    "check_equivariance",
    "eval_izeta",
    "eval_component",
    "components_containing",
    "sample_reversible",
    "sample_component",
    "system22_point",
    "check_necessary_conditions",
    "pool_rational",
]

# Canonical quadratic-family slot of each subscript-named parameter.
QUAD_SLOTS = {
    "a100": 0, "a010": 1, "a001": 2,
    "b010": 3, "b001": 4, "b100": 5,
    "c001": 6, "c100": 7, "c010": 8,
}
_NQ = 9


@dataclass(frozen=True)
class RevMatrix:
    """The reversing matrix data (alpha, beta, gamma); their product must be 1."""

    alpha: CycQ
    beta: CycQ
    gamma: CycQ

    def __post_init__(self):
        if self.alpha * self.beta * self.gamma != ONE:
            raise ValueError("reversing matrix needs alpha * beta * gamma = 1")


@dataclass(frozen=True)
class QuadPoint:
    """A concrete parameter point of the nine-parameter quadratic family."""

    a100: CycQ
    a010: CycQ
    a001: CycQ
    b100: CycQ
    b010: CycQ
    b001: CycQ
    c100: CycQ
    c010: CycQ
    c001: CycQ

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, CycQ):
                object.__setattr__(self, f.name, CycQ(value))

    def ordered_values(self) -> tuple[CycQ, ...]:
        """Values in canonical slot order of the quadratic family."""
        out = [ZERO] * _NQ
        for f in fields(self):
            out[QUAD_SLOTS[f.name]] = getattr(self, f.name)
        return tuple(out)

    def to_spec(self) -> SystemSpec:
        return quadratic_family().with_values(self.ordered_values())

    def as_dict(self) -> dict[str, str]:
        return {f.name: str(getattr(self, f.name)) for f in fields(self)}

    def is_restricted(self) -> bool:
        """True on the restricted subfamily: b001 = c100 = 0, b010 = 1."""
        return (not self.b001) and (not self.c100) and self.b010 == ONE


def _var(name: str) -> ParamPoly:
    return ParamPoly.variable(_NQ, QUAD_SLOTS[name])


def _const(c: CycQ) -> ParamPoly:
    return ParamPoly.constant(_NQ, c)


def _prod(n1: str, n2: str) -> ParamPoly:
    return _var(n1) * _var(n2)


# Generators of the reversibility variety of the full quadratic family
# (differences of parameter products; all are L-homogeneous).
IZETA_GENERATORS: tuple[ParamPoly, ...] = (
    _prod("b010", "b100") - _prod("a100", "c010"),
    _prod("b001", "b100") - _prod("a001", "c100"),
    _prod("a010", "b100") - _prod("c010", "c100"),
    _prod("b001", "b010") - _prod("a010", "c001"),
    _prod("a001", "b010") - _prod("c001", "c010"),
    _prod("a100", "b001") - _prod("c001", "c100"),
    _prod("a010", "a100") - _prod("b010", "c100"),
    _prod("a001", "a100") - _prod("b100", "c001"),
    _prod("a001", "a010") - _prod("b001", "c010"),
)

_ZP1 = ZETA + ONE  # z + 1 = -z^2

# Component ideals of the restricted subfamily (b001 = c100 = 0, b010 = 1).
COMPONENT_GENERATORS: dict[int, tuple[ParamPoly, ...]] = {
    1: (_var("c001"), _var("a001")),
    2: (
        _var("c010") + _const(ZETA),
        _var("a010") - _const(ONE + ZETA + ZETA),
        _prod("a001", "a100") - _prod("a001", "b100").scaled(ZETA) + _prod("b100", "c001"),
    ),
    3: (
        _var("c010") + _const(ZETA),
        _var("a001") + _var("c001").scaled(ZETA),
        _prod("a010", "a100") - _var("a100").scaled(_ZP1) + _var("b100").scaled(ZETA),
    ),
    4: (_var("b100"), _var("a100")),
    5: (_var("b100"), _var("a001")),
    6: (
        _prod("a010", "c001") - _prod("c001", "c010").scaled(_ZP1) + _var("a001").scaled(_ZP1),
        _prod("a010", "a100") - _prod("a100", "c010").scaled(_ZP1) + _var("b100").scaled(_ZP1),
        _prod("a001", "a100") - _prod("b100", "c001"),
    ),
    7: (_var("c010"), _prod("a010", "a100") + _var("b100").scaled(_ZP1)),
    8: (_var("c010"), _var("a001")),
    9: (_var("b100"), _var("a010") - _var("c010").scaled(ZETA)),
}

# Components whose systems are linearizable (all resonant coefficients
# vanish) versus the ones only observed integrable at finite order.
LINEARIZABLE_COMPONENTS = (1, 4, 5, 8, 9)
CONJECTURE_COMPONENTS = (2, 3, 6, 7)


def check_equivariance(spec: SystemSpec, A: RevMatrix) -> list[CycQ]:
    """Coefficient differences of A F(x) - z F(Ax) for the concrete system.

    Returns one entry per monomial of the union support, component by
    component in graded-lex order; the system is reversible under A exactly
    when every entry is zero.
    """
    F = concrete_field(spec)
    scale = (A.alpha, A.beta, A.gamma)
    powers: dict[tuple[int, int, int], CycQ] = {}

    def composed(m: int) -> dict[tuple[int, int, int], CycQ]:
        # z * F_m(alpha x2, beta x3, gamma x1): monomial (e1,e2,e3) turns
        # into (e3,e1,e2) with the coefficient scaled accordingly.
        out: dict[tuple[int, int, int], CycQ] = {}
        for (e1, e2, e3), coeff in F[m].items():
            key = (e1, e2, e3)
            factor = powers.get(key)
            if factor is None:
                factor = (scale[0] ** e1) * (scale[1] ** e2) * (scale[2] ** e3)
                powers[key] = factor
            c = ZETA * coeff * factor
            target = (e3, e1, e2)
            prev = out.get(target)
            out[target] = c if prev is None else prev + c
        return out

    lhs = [
        {k: A.alpha * c for k, c in F[1].items()},
        {k: A.beta * c for k, c in F[2].items()},
        {k: A.gamma * c for k, c in F[0].items()},
    ]
    residuals: list[CycQ] = []
    for m in range(3):
        rhs = composed(m)
        support = sorted(set(lhs[m]) | set(rhs), key=grlex_key)
        for key in support:
            residuals.append(lhs[m].get(key, ZERO) - rhs.get(key, ZERO))
    return residuals


def eval_izeta(point: QuadPoint) -> list[CycQ]:
    """The nine reversibility-variety generators at the point; all zero
    exactly when the point lies in the closure of the reversible systems."""
    values = point.ordered_values()
    return [g.evaluate(values) for g in IZETA_GENERATORS]


def eval_component(cid: int, point: QuadPoint) -> list[CycQ]:
    values = point.ordered_values()
    return [g.evaluate(values) for g in COMPONENT_GENERATORS[cid]]


def components_containing(point: QuadPoint) -> list[int]:
    return [
        cid
        for cid in sorted(COMPONENT_GENERATORS)
        if not any(eval_component(cid, point))
    ]


def pool_rational(rng: random.Random, nonzero: bool = False) -> CycQ:
    """Draw a small exact rational: numerator and denominator in [-9, 9]."""
    while True:
        num = rng.randint(-9, 9)
        if nonzero and num == 0:
            continue
        den = rng.randint(1, 9)
        return CycQ(Rational(num, den))


def sample_reversible(rng: random.Random) -> tuple[QuadPoint, RevMatrix]:
    """A reversible quadratic point built by the closed parameter chain.

    Draws a100, a010, a001 and nonzero alpha, beta (gamma = 1/(alpha beta))
    and propagates b = z * (chain) a, c = z * (chain) b; the closure back to
    the a-parameters holds identically because alpha beta gamma = 1.  The
    matrix returned witnesses the equivariance: its entries are z * alpha,
    z * beta, z * gamma, whose product is again 1.
    """
    alpha = pool_rational(rng, nonzero=True)
    beta = pool_rational(rng, nonzero=True)
    gamma = (alpha * beta).inv()
    a100 = pool_rational(rng)
    a010 = pool_rational(rng)
    a001 = pool_rational(rng)
    b010 = ZETA * alpha * a100
    b001 = ZETA * beta * a010
    b100 = ZETA * gamma * a001
    c010 = ZETA * alpha * b100
    c001 = ZETA * beta * b010
    c100 = ZETA * gamma * b001
    point = QuadPoint(
        a100=a100, a010=a010, a001=a001,
        b100=b100, b010=b010, b001=b001,
        c100=c100, c010=c010, c001=c001,
    )
    matrix = RevMatrix(ZETA * alpha, ZETA * beta, ZETA * gamma)
    return point, matrix


def system22_point(a100, a010, a001, b100, c010, c001) -> QuadPoint:
    """A point of the restricted subfamily: b001 = c100 = 0, b010 = 1."""
    return QuadPoint(
        a100=a100, a010=a010, a001=a001,
        b100=b100, b010=ONE, b001=ZERO,
        c100=ZERO, c010=c010, c001=c001,
    )


def sample_component(cid: int, rng: random.Random, max_retries: int = 50) -> QuadPoint:
    """An exact point on component cid of the restricted subfamily.

    Free parameters come from the rational pool; the dependent ones are
    solved from the generators in a fixed order per component:

      1: c001 = a001 = 0
      2: c010 = -z, a010 = 1 + 2z, then c001 = a001 (z b100 - a100) / b100
         with b100 drawn nonzero
      3: c010 = -z, a001 = -z c001, b100 = z^2 a100 (1 + z - a010)
      4: b100 = a100 = 0
      5: b100 = a001 = 0
      6: with t = (z+1) c010 - a010: a001 = -z c001 t, b100 = -z a100 t
         (the remaining generator then vanishes identically)
      7: c010 = 0, b100 = z a010 a100
      8: c010 = a001 = 0
      9: b100 = 0, a010 = z c010

    Every returned point is re-verified against its generators.
    """
    if cid not in COMPONENT_GENERATORS:
        raise ValueError(f"component id must be 1..9, got {cid}")
    for _ in range(max_retries):
        a100 = pool_rational(rng)
        a010 = pool_rational(rng)
        a001 = pool_rational(rng)
        b100 = pool_rational(rng)
        c010 = pool_rational(rng)
        c001 = pool_rational(rng)
        if cid == 1:
            c001 = a001 = ZERO
        elif cid == 2:
            c010 = -ZETA
            a010 = ONE + ZETA + ZETA
            if not b100:
                continue
            c001 = a001 * (ZETA * b100 - a100) / b100
        elif cid == 3:
            c010 = -ZETA
            a001 = -(ZETA * c001)
            b100 = ZETA2 * a100 * (_ZP1 - a010)
        elif cid == 4:
            b100 = a100 = ZERO
        elif cid == 5:
            b100 = a001 = ZERO
        elif cid == 6:
            t = _ZP1 * c010 - a010
            a001 = -(ZETA * c001 * t)
            b100 = -(ZETA * a100 * t)
        elif cid == 7:
            c010 = ZERO
            b100 = ZETA * a010 * a100
        elif cid == 8:
            c010 = a001 = ZERO
        elif cid == 9:
            b100 = ZERO
            a010 = ZETA * c010
        point = system22_point(a100, a010, a001, b100, c010, c001)
        if not any(eval_component(cid, point)):
            return point
    raise RuntimeError(f"could not sample component {cid} after {max_retries} draws")


def check_necessary_conditions(point: QuadPoint, K: int = 5) -> dict:
    """Evaluate the first K quantities and the component ideals at the point.

    Component membership is only meaningful on the restricted subfamily;
    for other points the satisfied-component list is empty.
    """
    spec = point.to_spec()
    g_values = quantities_direct_values(spec, K)
    satisfied = components_containing(point) if point.is_restricted() else []
    return {
        "point": point.as_dict(),
        "components_satisfied": satisfied,
        "g_values": [str(v) for v in g_values],
        "izeta_zero": not any(eval_izeta(point)),
    }
