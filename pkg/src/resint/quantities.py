"""Integrability quantities of the three-dimensional family.

Computes the coefficients v_{k1,k2,k3} of the candidate first integral

    Psi = x1 x2 x3 + sum v_{k1,k2,k3} x1^{k1+1} x2^{k2+1} x3^{k3+1}

and the obstruction polynomials g_{kkk} along the resonant diagonal, by two
independent strategies:

* the direct recurrence (algorithm 1): walk the index lattice reachable from
  (0,0,0) by the per-slot shift triples, shell by shell in the index sum;
  off-diagonal indices divide by k1 + k2 z + k3 z^2 (nonzero there), diagonal
  indices (k,k,k) keep v = 0 and surrender their right-hand side as g_{kkk};

* the coefficient-wise recursion (algorithm 2): for each target monomial [nu]
  with L(nu) = (k,k,k), the universal coefficient V(nu) is computed by a
  memoized recursion over sub-monomials, and g_{kkk}^(nu) is the same
  three-block sum without the divisor.

Both must produce bit-identical canonical polynomials.  A brute-force check
applies the vector field to the truncated Psi in phase space and verifies
the residual is exactly the diagonal series.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .cyclotomic import ONE, ZERO, CycQ, eval_divisor
from .polyring import ParamPoly, PhasePoly, apply_vector_field, grlex_key
from .sysspec import BLOCK_WEIGHTS, SystemSpec, l_map, symbolic_field

__all__ = [
    "REFERENCE_TERM_COUNTS",
    "VTable",
    "GList",
    "VCache",
    "reachable_indices",
    "quantities_direct",
    "quantities_direct_values",
    "universal_coefficient",
    "diagonal_coefficient",
    "enumerate_diagonal_support",
    "quantities_coefficientwise",
    "ResidualReport",
    "brute_force_check",
]

# Frozen reference term counts for the three benchmark families; the only
# machine-independent quantitative data the bench harness asserts against.
# Counting convention: rational-basis terms (ParamPoly.term_count).  The S1
# even-k cells are 384 and 18956, not the published 404 / 19142: the
# polynomials are pinned uniquely by the defining identity and were
# re-verified with independent arithmetic (the residual oracle and a sympy
# cross-check); see the acceptance suite for the published-value check.
REFERENCE_TERM_COUNTS: dict[str, dict[int, int]] = {
    "S1": {1: 12, 2: 384, 3: 3644, 4: 18956, 5: 74790},
    "S2": {1: 12, 2: 280, 3: 1676, 4: 6164, 5: 17572},
    "S3": {1: 4, 2: 32, 3: 100, 4: 214, 5: 388},
}


@dataclass
class VTable:
    """First-integral coefficient table: index (k1,k2,k3) -> ParamPoly.

    Indices live in {>= -1}^3 with nonnegative sum; the entry at the origin
    is 1 and diagonal entries (k,k,k), k >= 1 are identically zero.
    """

    spec: SystemSpec
    max_level: int
    entries: dict[tuple[int, int, int], ParamPoly] = field(default_factory=dict)

    def get(self, idx: tuple[int, int, int]) -> ParamPoly:
        poly = self.entries.get(idx)
        if poly is None:
            return ParamPoly.zero(self.spec.nvars)
        return poly

    def structure_violations(self) -> list[tuple[tuple[int, int, int], tuple[int, ...]]]:
        """Support monomials whose L-image differs from their index."""
        bad = []
        for idx, poly in self.entries.items():
            for nu in poly.terms:
                if l_map(self.spec, nu) != idx:
                    bad.append((idx, nu))
        return bad


@dataclass
class GList:
    """Obstruction polynomials g_{kkk} for k = 1..K (index k-1 in the list)."""

    spec: SystemSpec
    K: int
    quantities: list[ParamPoly]

    def term_counts(self) -> list[int]:
        return [g.term_count() for g in self.quantities]

    def structure_violations(self) -> list[tuple[int, tuple[int, ...]]]:
        bad = []
        for k, poly in enumerate(self.quantities, start=1):
            for nu in poly.terms:
                if l_map(self.spec, nu) != (k, k, k):
                    bad.append((k, nu))
        return bad

    def evaluate(self, values: Sequence[CycQ]) -> list[CycQ]:
        return [g.evaluate(values) for g in self.quantities]

    def __eq__(self, other):
        if not isinstance(other, GList):
            return NotImplemented
        return (
            self.spec.triples == other.spec.triples
            and self.K == other.K
            and self.quantities == other.quantities
        )


def reachable_indices(spec: SystemSpec, cap: int) -> set[tuple[int, int, int]]:
    """Closure of {(0,0,0)} under the 3l shift triples, kept inside
    coordinates >= -1 and index sum <= cap.

    Every shift raises the index sum by at least one, so the walk
    terminates; coefficients vanish identically outside this set.
    """
    shifts = set(spec.slot_shifts)
    seen = {(0, 0, 0)}
    frontier = [(0, 0, 0)]
    while frontier:
        nxt = []
        for idx in frontier:
            for sh in shifts:
                cand = (idx[0] + sh[0], idx[1] + sh[1], idx[2] + sh[2])
                if cand in seen:
                    continue
                if min(cand) < -1 or cand[0] + cand[1] + cand[2] > cap:
                    continue
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    return seen


def _shell_order(indices: set[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    return sorted(indices, key=lambda t: (t[0] + t[1] + t[2], t))


def quantities_direct(spec: SystemSpec, K: int) -> tuple[VTable, GList]:
    """Algorithm 1: symbolic coefficient table and g-list through level K."""
    if K < 1:
        raise ValueError("K must be >= 1")
    n = spec.nvars
    cap = 3 * K
    slot_data = list(zip(spec.slot_shifts, spec.slot_blocks))
    weights = [BLOCK_WEIGHTS[b] for b in spec.slot_blocks]

    table: dict[tuple[int, int, int], ParamPoly] = {}
    gs = [ParamPoly.zero(n) for _ in range(K)]
    zero_poly = ParamPoly.zero(n)

    for idx in _shell_order(reachable_indices(spec, cap)):
        if idx == (0, 0, 0):
            table[idx] = ParamPoly.one(n)
            continue
        acc: dict[tuple[int, ...], CycQ] = {}
        for slot, (sh, block) in enumerate(slot_data):
            prev_idx = (idx[0] - sh[0], idx[1] - sh[1], idx[2] - sh[2])
            pv = table.get(prev_idx)
            if pv is None or not pv.terms:
                continue
            m = prev_idx[block] + 1
            if m == 0:
                continue
            w = weights[slot] * m
            for exps, coeff in pv.terms.items():
                key = exps[:slot] + (exps[slot] + 1,) + exps[slot + 1:]
                c = coeff * w
                prevc = acc.get(key)
                if prevc is None:
                    acc[key] = c
                else:
                    prevc = prevc + c
                    if prevc:
                        acc[key] = prevc
                    else:
                        del acc[key]
        rhs = ParamPoly.__new__(ParamPoly)
        rhs.nvars = n
        rhs.terms = acc
        if idx[0] == idx[1] == idx[2]:
            k = idx[0]
            gs[k - 1] = rhs
            table[idx] = zero_poly
        else:
            table[idx] = rhs.scaled(-eval_divisor(*idx).inv())

    return VTable(spec, K, table), GList(spec, K, gs)


def quantities_direct_values(spec: SystemSpec, K: int) -> list[CycQ]:
    """Algorithm 1 run at a concrete parameter point: returns the K values."""
    if K < 1:
        raise ValueError("K must be >= 1")
    values = spec.require_values()
    cap = 3 * K
    slot_data = list(zip(spec.slot_shifts, spec.slot_blocks))
    factors = [
        BLOCK_WEIGHTS[block] * values[slot]
        for slot, block in enumerate(spec.slot_blocks)
    ]

    table: dict[tuple[int, int, int], CycQ] = {}
    gs = [ZERO] * K

    for idx in _shell_order(reachable_indices(spec, cap)):
        if idx == (0, 0, 0):
            table[idx] = ONE
            continue
        total = ZERO
        for slot, (sh, block) in enumerate(slot_data):
            fac = factors[slot]
            if not fac:
                continue
            prev_idx = (idx[0] - sh[0], idx[1] - sh[1], idx[2] - sh[2])
            pv = table.get(prev_idx)
            if pv is None or not pv:
                continue
            m = prev_idx[block] + 1
            if m == 0:
                continue
            total = total + pv * fac * m
        if idx[0] == idx[1] == idx[2]:
            gs[idx[0] - 1] = total
            table[idx] = ZERO
        else:
            table[idx] = -(total * eval_divisor(*idx).inv()) if total else ZERO

    return gs


class VCache:
    """Memo table for the universal coefficients, seeded with V(0) = 1."""

    __slots__ = ("spec", "memo")

    def __init__(self, spec: SystemSpec):
        self.spec = spec
        self.memo: dict[tuple[int, ...], CycQ] = {(0,) * spec.nvars: ONE}

    def __len__(self):
        return len(self.memo)


def _three_block_sum(spec: SystemSpec, nu: tuple[int, ...], L: tuple[int, int, int], cache: VCache) -> CycQ:
    """The block-weighted sum over sub-monomials nu - e_j shared by the
    universal-coefficient recursion and the diagonal coefficients."""
    total = ZERO
    shifts = spec.slot_shifts
    blocks = spec.slot_blocks
    for slot, count in enumerate(nu):
        if not count:
            continue
        sh = shifts[slot]
        block = blocks[slot]
        sub_l = (L[0] - sh[0], L[1] - sh[1], L[2] - sh[2])
        factor = sub_l[block] + 1
        if factor == 0:
            continue
        sub = nu[:slot] + (count - 1,) + nu[slot + 1:]
        v_sub = universal_coefficient(spec, sub, cache, _l=sub_l)
        if not v_sub:
            continue
        total = total + v_sub * (BLOCK_WEIGHTS[block] * factor)
    return total


def universal_coefficient(
    spec: SystemSpec,
    nu: Sequence[int],
    cache: VCache | None = None,
    _l: tuple[int, int, int] | None = None,
) -> CycQ:
    """V(nu): the coefficient of [nu] in the table entry at index L(nu).

    Defined recursively over |nu|: V(0) = 1, V(nu) = 0 when the L-image is
    diagonal, and otherwise the three-block sum divided by
    -(L1 + L2 z + L3 z^2).  Memoized in the cache.
    """
    nu = tuple(nu)
    if cache is None:
        cache = VCache(spec)
    val = cache.memo.get(nu)
    if val is not None:
        return val
    L = _l if _l is not None else l_map(spec, nu)
    if L[0] == L[1] == L[2]:
        # nu = 0 is pre-seeded, so this is the vanishing diagonal case
        cache.memo[nu] = ZERO
        return ZERO
    total = _three_block_sum(spec, nu, L, cache)
    if total:
        val = -(total * CycQ(L[0] - L[2], L[1] - L[2]).inv())
    else:
        val = ZERO
    cache.memo[nu] = val
    return val


def diagonal_coefficient(
    spec: SystemSpec,
    nu: Sequence[int],
    cache: VCache,
    _l: tuple[int, int, int] | None = None,
) -> CycQ:
    """The coefficient of [nu] in g_{kkk} for L(nu) = (k,k,k): the same
    three-block sum, with no divisor applied."""
    nu = tuple(nu)
    L = _l if _l is not None else l_map(spec, nu)
    return _three_block_sum(spec, nu, L, cache)


def enumerate_diagonal_support(spec: SystemSpec, k: int) -> Iterator[tuple[int, ...]]:
    """All nu >= 0 with L(nu) = (k,k,k), in lexicographic order.

    Since every slot consumes at least one unit of L1 + L2 + L3 per
    exponent and the target total is 3k, |nu| <= 3k automatically; the
    backtracking prunes on per-coordinate reachability bounds.
    """
    n = spec.nvars
    shifts = spec.slot_shifts
    degs = [sh[0] + sh[1] + sh[2] for sh in shifts]
    target = (k, k, k)

    # Suffix tables: can coordinate c still decrease / how fast can it grow
    # using slots >= i?  One unit of any slot costs >= 1 of the remaining
    # L-sum budget, so +-budget bounds the remaining movement.
    has_neg = [[False] * 3 for _ in range(n + 1)]
    max_pos = [[0] * 3 for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for c in range(3):
            has_neg[i][c] = has_neg[i + 1][c] or shifts[i][c] < 0
            max_pos[i][c] = max(max_pos[i + 1][c], shifts[i][c])

    nu = [0] * n
    out: list[tuple[int, ...]] = []

    def feasible(i: int, L: tuple[int, int, int], budget: int) -> bool:
        for c in range(3):
            lo = L[c] - budget if has_neg[i][c] else L[c]
            hi = L[c] + max_pos[i][c] * budget if max_pos[i][c] > 0 else L[c]
            if lo > target[c] or hi < target[c]:
                return False
        return True

    def rec(i: int, L: tuple[int, int, int], budget: int):
        if i == n:
            if L == target:
                out.append(tuple(nu))
            return
        if not feasible(i, L, budget):
            return
        sh = shifts[i]
        deg = degs[i]
        top = budget // deg
        for count in range(top + 1):
            nu[i] = count
            rec(
                i + 1,
                (L[0] + count * sh[0], L[1] + count * sh[1], L[2] + count * sh[2]),
                budget - count * deg,
            )
        nu[i] = 0

    rec(0, (0, 0, 0), 3 * k)
    return iter(out)


def quantities_coefficientwise(spec: SystemSpec, K: int) -> GList:
    """Algorithm 2: assemble each g_{kkk} monomial by monomial."""
    if K < 1:
        raise ValueError("K must be >= 1")
    n = spec.nvars
    cache = VCache(spec)
    gs = []
    for k in range(1, K + 1):
        terms: dict[tuple[int, ...], CycQ] = {}
        for nu in enumerate_diagonal_support(spec, k):
            if not any(nu):
                continue
            c = diagonal_coefficient(spec, nu, cache, _l=(k, k, k))
            if c:
                terms[nu] = c
        poly = ParamPoly.__new__(ParamPoly)
        poly.nvars = n
        poly.terms = terms
        gs.append(poly)
    return GList(spec, K, gs)


@dataclass
class ResidualReport:
    """Outcome of the brute-force phase-space check.

    The truncated integral candidate contains every term of phase degree up
    to checked_degree = 3K + 3, so applying the vector field (truncated at
    the same bound) reproduces every residual coefficient of degree
    <= checked_degree exactly; all of them must vanish.  No partially
    accumulated degrees are retained, hence no exclusion window.
    """

    ok: bool
    checked_degree: int
    violations: list[tuple[tuple[int, int, int], ParamPoly]]

    def summary(self) -> str:
        if self.ok:
            return (
                f"residual identically zero through phase degree {self.checked_degree}"
            )
        exps, poly = self.violations[0]
        return (
            f"residual violation at monomial {exps} (and "
            f"{len(self.violations) - 1} more); first coefficient: {poly.to_text()}"
        )


def brute_force_check(
    spec: SystemSpec,
    K: int,
    vtable: VTable | None = None,
    glist: GList | None = None,
) -> ResidualReport:
    """Apply the vector field to the truncated integral candidate and verify
    that what is left is exactly the diagonal series of the g-list."""
    if vtable is None or glist is None:
        vtable, glist = quantities_direct(spec, K)
    bound = 3 * K + 3
    psi_terms: dict[tuple[int, int, int], ParamPoly] = {}
    for idx, poly in vtable.entries.items():
        if poly:
            psi_terms[(idx[0] + 1, idx[1] + 1, idx[2] + 1)] = poly
    psi = PhasePoly(bound, psi_terms)
    residual = apply_vector_field(symbolic_field(spec, bound), psi)
    for k in range(1, K + 1):
        g = glist.quantities[k - 1]
        if g:
            residual = residual - PhasePoly(bound, {(k + 1, k + 1, k + 1): g})
    violations = [(exps, residual.terms[exps]) for exps in residual.support()]
    return ResidualReport(not violations, bound, violations)
