"""Truncated distinguished normal form for a concrete-parameter system.

With linear part diag(1, z, z^2) the resonant monomials of component m are
exactly y_m (y1 y2 y3)^k, so the normal form is y_m (kappa_m + Y_m(y1 y2 y3))
and the data of interest is the three coefficient sequences Y1, Y2, Y3.

The computation is the classical degree-by-degree homological solve: at
degree d the pushed-forward field is split into resonant coefficients (kept)
and nonresonant ones (removed into the transformation h via an exact division
by (alpha, kappa) - kappa_m, whose squared modulus is >= 1, so no small
divisors).  h never receives a resonant term: the transformation returned is
the distinguished one.

Internally the engine tracks per-degree slices of the substituted field with
raw (re, ze) rational pairs; CycQ objects appear only at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import KAPPA, ONE, Rational, ZERO, CycQ, eval_divisor
from .polyring import PhasePoly
from .sysspec import BLOCK_WEIGHTS, SystemSpec, concrete_field

__all__ = [
    "ResonantSeries",
    "NormalizingMap",
    "is_resonant",
    "resonance_divisor",
    "compute_normal_form",
    "integrability_residual",
    "verify_conjugacy",
    "normal_form_report",
]

_R0 = Rational(0)
_R1 = Rational(1)

# (alpha, kappa) - kappa_m reduced to the {1, z} basis is
# (a0 - a2 + DA[m]) + (a1 - a2 + DB[m]) z for the component index m = 0, 1, 2.
_DA = (-1, 0, 1)
_DB = (0, -1, 1)


def is_resonant(alpha: tuple[int, int, int], m: int) -> bool:
    """Structural resonance test for component m in {1, 2, 3}:
    alpha = (k, k, k) + e_m for some k >= 1."""
    i = m - 1
    k = alpha[(i + 1) % 3]
    return k >= 1 and alpha[(i + 2) % 3] == k and alpha[i] == k + 1


def resonance_divisor(alpha: tuple[int, int, int], m: int) -> CycQ:
    """(alpha, kappa) - kappa_m as an exact field element."""
    return eval_divisor(*alpha) - KAPPA[m - 1]


@dataclass
class ResonantSeries:
    """Resonant coefficient sequences: y_m[k-1] is the level-k coefficient of
    component m, i.e. the coefficient of y_m (y1 y2 y3)^k."""

    y1: list[CycQ]
    y2: list[CycQ]
    y3: list[CycQ]

    def __post_init__(self):
        if not (len(self.y1) == len(self.y2) == len(self.y3)):
            raise ValueError("component sequences must have equal length")

    @property
    def K(self) -> int:
        return len(self.y1)

    def component(self, m: int) -> list[CycQ]:
        return (self.y1, self.y2, self.y3)[m - 1]

    def level_sums(self) -> list[CycQ]:
        return [a + b + c for a, b, c in zip(self.y1, self.y2, self.y3)]

    def is_linear(self) -> bool:
        return not any(v for seq in (self.y1, self.y2, self.y3) for v in seq)

    def first_nonzero_level(self) -> int | None:
        """First level where any component is nonzero (1-based)."""
        for k in range(self.K):
            if self.y1[k] or self.y2[k] or self.y3[k]:
                return k + 1
        return None

    def first_nonzero_sum_level(self) -> int | None:
        for k, s in enumerate(self.level_sums(), start=1):
            if s:
                return k
        return None

    def vanishing_components(self) -> tuple[bool, bool, bool]:
        return (
            not any(self.y1),
            not any(self.y2),
            not any(self.y3),
        )


def integrability_residual(series: ResonantSeries) -> list[CycQ]:
    """Level-by-level values of Y1 + Y2 + Y3; all zero signals integrability
    through the computed order."""
    return series.level_sums()


@dataclass
class NormalizingMap:
    """The distinguished transformation x = y + h(y): three monomial maps
    (degrees 2..degree) with no linear part and no resonant monomial."""

    components: tuple[dict, dict, dict]
    degree: int

    def resonant_support(self) -> list[tuple[int, tuple[int, int, int]]]:
        """Resonant monomials present in h (must be empty)."""
        bad = []
        for m in range(1, 4):
            for alpha in self.components[m - 1]:
                if is_resonant(alpha, m):
                    bad.append((m, alpha))
        return bad

    def term_count(self) -> int:
        return sum(len(c) for c in self.components)


class _Prod:
    """One truncated product node: left-series times the full series u_var."""

    __slots__ = ("left", "var", "slices")

    def __init__(self, left: list, var: int, order: int):
        self.left = left
        self.var = var
        self.slices: list = [None] * (order + 1)


def _conv(left_slices: list, right_slices: list, d: int) -> dict:
    """Degree-d slice of the product of two series with no constant part."""
    out: dict[tuple[int, int, int], list] = {}
    for e in range(1, d):
        A = left_slices[e]
        B = right_slices[d - e]
        if not A or not B:
            continue
        for (a1, a2, a3), (ar, az) in A.items():
            for (b1, b2, b3), (br, bz) in B.items():
                key = (a1 + b1, a2 + b2, a3 + b3)
                t = az * bz
                re = ar * br - t
                ze = ar * bz + az * br - t
                prev = out.get(key)
                if prev is None:
                    out[key] = [re, ze]
                else:
                    prev[0] += re
                    prev[1] += ze
    return {k: v for k, v in out.items() if v[0] or v[1]}


def _build_nodes(betas, u_slices, order):
    """Shared product chains for the needed powers u1^b1 u2^b2 u3^b3."""
    registry: dict[tuple[int, int, int], list] = {}
    prods: list[_Prod] = []

    def node_for(key: tuple[int, int, int]) -> list:
        found = registry.get(key)
        if found is not None:
            return found
        if sum(key) == 1:
            sl = u_slices[key.index(1)]
            registry[key] = sl
            return sl
        var = 2 if key[2] else (1 if key[1] else 0)
        pred = list(key)
        pred[var] -= 1
        left = node_for(tuple(pred))
        node = _Prod(left, var, order)
        prods.append(node)
        registry[key] = node.slices
        return node.slices

    for beta in betas:
        node_for(beta)
    return prods, registry


def compute_normal_form(spec: SystemSpec, order: int = 22) -> tuple[ResonantSeries, NormalizingMap]:
    """Normalize degree by degree through the given truncation order.

    Requires a full concrete parameter point.  Returns K = (order - 1) // 3
    resonant levels (level k lives at phase degree 3k + 1) together with the
    distinguished transformation through the same order.
    """
    values = spec.require_values()
    if order < 4:
        raise ValueError("order must be >= 4 to contain a resonant level")
    K = (order - 1) // 3

    u_slices: list[list] = []
    for m in range(3):
        sl: list = [None] * (order + 1)
        unit = tuple(1 if i == m else 0 for i in range(3))
        sl[1] = {unit: (_R1, _R0)}
        u_slices.append(sl)

    nonlinear: list[list] = [[], [], []]
    for slot, (block, mono) in enumerate(spec.phase_terms):
        val = BLOCK_WEIGHTS[block] * values[slot]
        if val:
            nonlinear[block].append((mono, (val.re, val.ze)))

    betas = sorted({beta for comp in nonlinear for beta, _ in comp})
    prods, registry = _build_nodes(betas, u_slices, order)

    g_levels: list[dict[int, tuple]] = [{}, {}, {}]

    for d in range(2, order + 1):
        for node in prods:
            node.slices[d] = _conv(node.left, u_slices[node.var], d)

        for m in range(3):
            acc: dict[tuple[int, int, int], list] = {}
            for beta, (cr, cz) in nonlinear[m]:
                sl = registry[beta][d]
                if not sl:
                    continue
                for key, (vr, vz) in sl.items():
                    t = cz * vz
                    re = cr * vr - t
                    ze = cr * vz + cz * vr - t
                    prev = acc.get(key)
                    if prev is None:
                        acc[key] = [re, ze]
                    else:
                        prev[0] += re
                        prev[1] += ze

            # subtract the Dh.g feedback: (dh_m/dy_i) g_i-level-k terms land
            # at alpha + (k, k, k) with an extra integer factor alpha_i
            for i in range(3):
                for k_level, (gr, gz) in g_levels[i].items():
                    e = d - 3 * k_level
                    if e < 2:
                        continue
                    hsl = u_slices[m][e]
                    if not hsl:
                        continue
                    for alpha, (hr, hz) in hsl.items():
                        ai = alpha[i]
                        if not ai:
                            continue
                        key = (alpha[0] + k_level, alpha[1] + k_level, alpha[2] + k_level)
                        t = hz * gz
                        pr = (hr * gr - t) * ai
                        pz = (hr * gz + hz * gr - t) * ai
                        prev = acc.get(key)
                        if prev is None:
                            acc[key] = [-pr, -pz]
                        else:
                            prev[0] -= pr
                            prev[1] -= pz

            hslice: dict[tuple[int, int, int], tuple] = {}
            da = _DA[m]
            db = _DB[m]
            for alpha, (cr, cz) in acc.items():
                if not cr and not cz:
                    continue
                a = alpha[0] - alpha[2] + da
                b = alpha[1] - alpha[2] + db
                if a == 0 and b == 0:
                    k_level = alpha[(m + 1) % 3]
                    # exact divisor vanished: must be the structural pattern
                    assert is_resonant(alpha, m + 1) and k_level >= 1
                    g_levels[m][k_level] = (cr, cz)
                else:
                    nrm = a * (a - b) + b * b
                    hslice[alpha] = (
                        (cr * (a - b) + cz * b) / nrm,
                        (cz * a - cr * b) / nrm,
                    )
            u_slices[m][d] = hslice

    y = [
        [CycQ(*g_levels[m].get(k, (_R0, _R0))) for k in range(1, K + 1)]
        for m in range(3)
    ]
    series = ResonantSeries(y[0], y[1], y[2])

    comps = []
    for m in range(3):
        terms: dict[tuple[int, int, int], CycQ] = {}
        for e in range(2, order + 1):
            sl = u_slices[m][e]
            if sl:
                for alpha, (pr, pz) in sl.items():
                    terms[alpha] = CycQ(pr, pz)
        comps.append(terms)
    nmap = NormalizingMap((comps[0], comps[1], comps[2]), order)
    return series, nmap


def verify_conjugacy(spec: SystemSpec, series: ResonantSeries, nmap: NormalizingMap) -> bool:
    """Reconstruction self-test with independent truncated arithmetic:
    substituting y + h(y) into the original field must reproduce the normal
    form exactly through the truncation order."""
    D = nmap.degree
    field = concrete_field(spec)

    subst = []
    for m in range(3):
        terms: dict[tuple[int, int, int], CycQ] = {
            tuple(1 if i == m else 0 for i in range(3)): ONE
        }
        terms.update(nmap.components[m])
        subst.append(PhasePoly(D, terms))

    pow_cache: dict[tuple[int, int], PhasePoly] = {}

    def xpow(i: int, e: int) -> PhasePoly:
        key = (i, e)
        cached = pow_cache.get(key)
        if cached is None:
            cached = subst[i] if e == 1 else xpow(i, e - 1) * subst[i]
            pow_cache[key] = cached
        return cached

    one_poly = PhasePoly(D, {(0, 0, 0): ONE})
    lhs = []
    for m in range(3):
        total = PhasePoly.zero(D)
        for exps, coeff in field[m].items():
            term = one_poly
            for i, e in enumerate(exps):
                if e:
                    term = term * xpow(i, e)
            total = total + term.scaled(coeff)
        lhs.append(total)

    normal_field = []
    for i in range(3):
        terms = {tuple(1 if j == i else 0 for j in range(3)): KAPPA[i]}
        seq = series.component(i + 1)
        for k, coeff in enumerate(seq, start=1):
            if coeff:
                alpha = tuple(k + 1 if j == i else k for j in range(3))
                terms[alpha] = coeff
        normal_field.append(PhasePoly(D, terms))

    for m in range(3):
        rhs = PhasePoly.zero(D)
        for i in range(3):
            rhs = rhs + subst[m].diff(i) * normal_field[i]
        if lhs[m] != rhs:
            return False
    return True


def normal_form_report(series: ResonantSeries) -> dict:
    """JSON-ready summary of a computed resonant series."""
    sums = integrability_residual(series)
    return {
        "resonant_order": series.K,
        "Y1": [str(v) for v in series.y1],
        "Y2": [str(v) for v in series.y2],
        "Y3": [str(v) for v in series.y3],
        "sum": [str(v) for v in sums],
        "linear_through_order": series.is_linear(),
        "integrable_through_order": not any(sums),
    }
