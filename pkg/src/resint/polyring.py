"""Sparse polynomials over Q(z).

Two flavours:

* ParamPoly - polynomials in the 3l system parameters, keyed by exponent
  vectors (plain int tuples of fixed length 3l) with CycQ coefficients.
  The stored form is canonical: no zero coefficient is ever kept, so
  equality is plain term-map equality.
* PhasePoly - truncated polynomials in the three phase variables x1, x2, x3
  whose coefficients live in any commutative ring with +, * and a truthiness
  test (CycQ or ParamPoly).  Every operation drops terms above the
  truncation degree, so no term of degree > max_degree is ever produced.

Exponent vectors are ordered graded-lexicographically (total degree first,
then lexicographic) wherever a canonical iteration order is needed.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .cyclotomic import ONE, ZERO, CycQ, parse_rational

__all__ = ["ParamPoly", "PhasePoly", "grlex_key", "apply_vector_field"]


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


def _coerce_coeff(c) -> CycQ:
    if isinstance(c, CycQ):
        return c
    return CycQ(c)


class ParamPoly:
    """Sparse parameter polynomial: {exponent tuple -> nonzero CycQ}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], CycQ] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], CycQ] = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    if len(exps) != nvars:
                        raise ValueError(
                            f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                        )
                    clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "ParamPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "ParamPoly":
        c = _coerce_coeff(c)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "ParamPoly":
        return cls.constant(nvars, ONE)

    @classmethod
    def variable(cls, nvars: int, slot: int, c=ONE) -> "ParamPoly":
        if not 0 <= slot < nvars:
            raise ValueError(f"variable slot {slot} out of range for {nvars} parameters")
        exps = tuple(1 if i == slot else 0 for i in range(nvars))
        return cls(nvars, {exps: _coerce_coeff(c)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=ONE) -> "ParamPoly":
        return cls(nvars, {tuple(exps): _coerce_coeff(c)})

    # -- ring operations -------------------------------------------------------

    def _check(self, other: "ParamPoly"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"parameter count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[exps] = acc
                else:
                    del terms[exps]
        out = ParamPoly.__new__(ParamPoly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    def __neg__(self):
        out = ParamPoly.__new__(ParamPoly)
        out.nvars = self.nvars
        out.terms = {exps: -coeff for exps, coeff in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ParamPoly):
            self._check(other)
            acc: dict[tuple[int, ...], CycQ] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    prev = acc.get(exps)
                    if prev is None:
                        if c:
                            acc[exps] = c
                    else:
                        prev = prev + c
                        if prev:
                            acc[exps] = prev
                        else:
                            del acc[exps]
            out = ParamPoly.__new__(ParamPoly)
            out.nvars = self.nvars
            out.terms = acc
            return out
        c = CycQ._coerce(other)
        if c is None:
            return NotImplemented
        return self.scaled(c)

    __rmul__ = __mul__

    def scaled(self, c: CycQ) -> "ParamPoly":
        out = ParamPoly.__new__(ParamPoly)
        out.nvars = self.nvars
        if not c:
            out.terms = {}
        else:
            out.terms = {exps: coeff * c for exps, coeff in self.terms.items()}
        return out

    def times_term(self, delta: tuple[int, ...], c: CycQ) -> "ParamPoly":
        """Multiply by the single term c * [delta]; fast path for recurrences."""
        out = ParamPoly.__new__(ParamPoly)
        out.nvars = self.nvars
        if not c:
            out.terms = {}
        else:
            out.terms = {
                tuple(a + b for a, b in zip(exps, delta)): coeff * c
                for exps, coeff in self.terms.items()
            }
        return out

    # -- queries ----------------------------------------------------------------

    def term_count(self) -> int:
        """Terms counted in the rational basis {1, z}: a coefficient with
        both components nonzero contributes two terms.  This is how a
        computer-algebra expansion over the rationals with the root of
        unity present reports polynomial sizes, and it is the convention
        of the reference counts."""
        return sum(2 if (c.re and c.ze) else 1 for c in self.terms.values())

    def support_size(self) -> int:
        """Number of distinct parameter monomials (coefficients in Q(z))."""
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=grlex_key)

    def coefficient(self, exps: Sequence[int]) -> CycQ:
        return self.terms.get(tuple(exps), ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, point: Sequence[CycQ]) -> CycQ:
        """Substitution homomorphism at a concrete parameter point."""
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        powers: dict[tuple[int, int], CycQ] = {}

        def _pow(slot: int, e: int) -> CycQ:
            key = (slot, e)
            cached = powers.get(key)
            if cached is None:
                cached = point[slot] ** e
                powers[key] = cached
            return cached

        total = ZERO
        for exps, coeff in self.terms.items():
            value = coeff
            for slot, e in enumerate(exps):
                if e:
                    value = value * _pow(slot, e)
                    if not value:
                        break
            total = total + value
        return total

    # -- serialization -------------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in self.support():
            coeff = self.terms[exps]
            factors = [f"({coeff})"]
            for slot, e in enumerate(exps):
                if e:
                    name = names[slot] if names else f"p{slot}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {
                "exps": list(exps),
                "re": str(self.terms[exps].re),
                "ze": str(self.terms[exps].ze),
            }
            for exps in self.support()
        ]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[dict]) -> "ParamPoly":
        terms = {}
        for entry in data:
            coeff = CycQ(parse_rational(entry["re"]), parse_rational(entry["ze"]))
            terms[tuple(entry["exps"])] = coeff
        return cls(nvars, terms)

    def __repr__(self):
        return f"ParamPoly(nvars={self.nvars}, terms={self.term_count()})"


class PhasePoly:
    """Truncated polynomial in x1, x2, x3 with ring-element coefficients.

    Terms above max_degree are silently dropped by every constructor and
    operation, so the truncation bound is an invariant of the value.
    """

    __slots__ = ("max_degree", "terms")

    def __init__(self, max_degree: int, terms: Mapping[tuple[int, int, int], object] | None = None):
        self.max_degree = max_degree
        clean: dict[tuple[int, int, int], object] = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff and sum(exps) <= max_degree:
                    clean[tuple(exps)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, max_degree: int) -> "PhasePoly":
        return cls(max_degree)

    def _wrap(self, terms: dict) -> "PhasePoly":
        out = PhasePoly.__new__(PhasePoly)
        out.max_degree = self.max_degree
        out.terms = terms
        return out

    def __add__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        if self.max_degree != other.max_degree:
            raise ValueError("truncation degree mismatch")
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            prev = terms.get(exps)
            if prev is None:
                terms[exps] = coeff
            else:
                prev = prev + coeff
                if prev:
                    terms[exps] = prev
                else:
                    del terms[exps]
        return self._wrap(terms)

    def __neg__(self):
        return self._wrap({exps: -coeff for exps, coeff in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        if self.max_degree != other.max_degree:
            raise ValueError("truncation degree mismatch")
        bound = self.max_degree
        acc: dict[tuple[int, int, int], object] = {}
        for (a1, a2, a3), c1 in self.terms.items():
            da = a1 + a2 + a3
            for (b1, b2, b3), c2 in other.terms.items():
                if da + b1 + b2 + b3 > bound:
                    continue
                exps = (a1 + b1, a2 + b2, a3 + b3)
                c = c1 * c2
                prev = acc.get(exps)
                if prev is None:
                    if c:
                        acc[exps] = c
                else:
                    prev = prev + c
                    if prev:
                        acc[exps] = prev
                    else:
                        del acc[exps]
        return self._wrap(acc)

    def scaled(self, c) -> "PhasePoly":
        if not c:
            return self._wrap({})
        return self._wrap({exps: coeff * c for exps, coeff in self.terms.items()})

    def diff(self, i: int) -> "PhasePoly":
        """Partial derivative with respect to x_{i+1}."""
        acc = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e:
                lowered = list(exps)
                lowered[i] = e - 1
                c = coeff * e
                if c:
                    acc[tuple(lowered)] = c
        return self._wrap(acc)

    def times_monomial(self, delta: tuple[int, int, int], c=None) -> "PhasePoly":
        bound = self.max_degree
        d = sum(delta)
        acc = {}
        for exps, coeff in self.terms.items():
            if sum(exps) + d > bound:
                continue
            value = coeff if c is None else coeff * c
            if value:
                acc[(exps[0] + delta[0], exps[1] + delta[1], exps[2] + delta[2])] = value
        return self._wrap(acc)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self.terms == other.terms

    def support(self) -> list[tuple[int, int, int]]:
        return sorted(self.terms, key=grlex_key)

    def coefficient(self, exps: tuple[int, int, int]):
        return self.terms.get(tuple(exps))

    def __repr__(self):
        return f"PhasePoly(max_degree={self.max_degree}, terms={len(self.terms)})"


def apply_vector_field(components: Sequence[PhasePoly], p: PhasePoly) -> PhasePoly:
    """Derivation along the field: sum_i components[i] * dp/dx_i, truncated."""
    total = PhasePoly.zero(p.max_degree)
    for i, comp in enumerate(components):
        total = total + comp * p.diff(i)
    return total
