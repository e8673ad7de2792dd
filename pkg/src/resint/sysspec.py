"""System family definition: the ordered exponent set S, parameter layout,
the exponent-weighting map L, and spec-file parsing.

A family is determined by an ordered set S of l distinct triples
(p, q, r) with p >= -1, q, r >= 0 and p + q + r >= 1.  The 3l parameters
are laid out in three blocks:

    slots 0 .. l-1      a[p,q,r]   (first equation, monomial x1^{p+1} x2^q x3^r)
    slots l .. 2l-1     b[r,p,q]   (second equation, monomial x1^r x2^{p+1} x3^q)
    slots 2l .. 3l-1    c[q,r,p]   (third equation, monomial x1^q x2^r x3^{p+1})

and the map L weights an exponent vector nu by the per-slot index triples
above, so L is linear and L1 + L2 + L3 >= |nu|.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cyclotomic import KAPPA, ONE, ZETA, ZETA2, CycQ
from .polyring import ParamPoly, PhasePoly

__all__ = [
    "SpecError",
    "STriple",
    "SystemSpec",
    "l_map",
    "parse_spec",
    "load_spec",
    "quadratic_family",
    "bench_families",
    "concrete_field",
    "symbolic_field",
]

# z-weights of the three equation blocks: the second and third equations
# carry overall factors z and z^2.
BLOCK_WEIGHTS = (ONE, ZETA, ZETA2)


class SpecError(ValueError):
    """Raised for malformed or invalid system specification input."""


@dataclass(frozen=True)
class STriple:
    p: int
    q: int
    r: int

    def validate(self):
        if self.p < -1:
            raise SpecError(f"triple {self.astuple()}: p must be >= -1")
        if self.q < 0 or self.r < 0:
            raise SpecError(f"triple {self.astuple()}: q and r must be >= 0")
        if self.p + self.q + self.r < 1:
            raise SpecError(f"triple {self.astuple()}: p + q + r must be >= 1")

    def astuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @property
    def degree(self) -> int:
        return self.p + self.q + self.r


def _block_name(letter: str, idx: tuple[int, int, int]) -> str:
    return f"{letter}[{idx[0]},{idx[1]},{idx[2]}]"


@dataclass(frozen=True)
class SystemSpec:
    """Ordered set S plus derived parameter layout and optional values.

    The S ordering is the construction order (not sorted): the monomial
    indexing [nu] depends on it, so callers control it.  Immutable once
    built; attach concrete values with with_values().
    """

    triples: tuple[STriple, ...]
    values: tuple[CycQ, ...] | None = None

    # derived, filled in __post_init__
    param_names: tuple[str, ...] = field(init=False, repr=False)
    slot_shifts: tuple[tuple[int, int, int], ...] = field(init=False, repr=False)
    slot_blocks: tuple[int, ...] = field(init=False, repr=False)
    phase_terms: tuple[tuple[int, tuple[int, int, int]], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.triples:
            raise SpecError("the set S must contain at least one triple")
        seen = set()
        for t in self.triples:
            t.validate()
            if t.astuple() in seen:
                raise SpecError(f"duplicate triple {t.astuple()} in S")
            seen.add(t.astuple())

        names: list[str] = []
        shifts: list[tuple[int, int, int]] = []
        blocks: list[int] = []
        phase: list[tuple[int, tuple[int, int, int]]] = []
        for letter, block in (("a", 0), ("b", 1), ("c", 2)):
            for t in self.triples:
                p, q, r = t.astuple()
                if block == 0:
                    idx = (p, q, r)
                    mono = (p + 1, q, r)
                elif block == 1:
                    idx = (r, p, q)
                    mono = (r, p + 1, q)
                else:
                    idx = (q, r, p)
                    mono = (q, r, p + 1)
                names.append(_block_name(letter, idx))
                shifts.append(idx)
                blocks.append(block)
                phase.append((block, mono))
        object.__setattr__(self, "param_names", tuple(names))
        object.__setattr__(self, "slot_shifts", tuple(shifts))
        object.__setattr__(self, "slot_blocks", tuple(blocks))
        object.__setattr__(self, "phase_terms", tuple(phase))

        if self.values is not None:
            if len(self.values) != self.nvars:
                raise SpecError(
                    f"expected {self.nvars} parameter values, got {len(self.values)}"
                )
            object.__setattr__(self, "values", tuple(self.values))

    @property
    def l(self) -> int:
        return len(self.triples)

    @property
    def nvars(self) -> int:
        return 3 * len(self.triples)

    @property
    def max_term_degree(self) -> int:
        """Largest p + q + r over S: the field degree is this plus one."""
        return max(t.degree for t in self.triples)

    def slot_of(self, name: str) -> int:
        canonical = _canonical_name(name)
        try:
            return self.param_names.index(canonical)
        except ValueError:
            raise SpecError(f"unknown parameter name {name!r}") from None

    def with_values(self, values) -> "SystemSpec":
        """Attach a full concrete parameter point (sequence or name mapping)."""
        if isinstance(values, Mapping):
            resolved: list[CycQ | None] = [None] * self.nvars
            for name, value in values.items():
                slot = self.slot_of(name)
                if resolved[slot] is not None:
                    raise SpecError(f"parameter {self.param_names[slot]!r} given twice")
                resolved[slot] = value if isinstance(value, CycQ) else CycQ.parse(str(value))
            missing = [self.param_names[i] for i, v in enumerate(resolved) if v is None]
            if missing:
                raise SpecError(
                    "no value for parameter(s): " + ", ".join(missing)
                    + " (partial points are not supported)"
                )
            vals = tuple(resolved)
        else:
            vals = tuple(v if isinstance(v, CycQ) else CycQ(v) for v in values)
        return SystemSpec(self.triples, vals)

    def require_values(self) -> tuple[CycQ, ...]:
        if self.values is None:
            raise SpecError("this operation needs a full concrete parameter point")
        return self.values

    def values_by_name(self) -> dict[str, CycQ]:
        return dict(zip(self.param_names, self.require_values()))

    def to_json_dict(self) -> dict:
        doc: dict = {"S": [list(t.astuple()) for t in self.triples]}
        if self.values is not None:
            doc["values"] = {n: str(v) for n, v in zip(self.param_names, self.values)}
        return doc


def l_map(spec: SystemSpec, nu: Sequence[int]) -> tuple[int, int, int]:
    """Weight an exponent vector by the per-slot triples; linear in nu."""
    if len(nu) != spec.nvars:
        raise SpecError(f"exponent vector length {len(nu)} != {spec.nvars}")
    l1 = l2 = l3 = 0
    for count, shift in zip(nu, spec.slot_shifts):
        if count:
            l1 += count * shift[0]
            l2 += count * shift[1]
            l3 += count * shift[2]
    return (l1, l2, l3)


_ALIAS_DIGITS = frozenset("0123456789")


def _canonical_name(name: str) -> str:
    name = name.strip()
    if len(name) == 4 and name[0] in "abc" and all(ch in _ALIAS_DIGITS for ch in name[1:]):
        # single-digit alias like "a100"; only valid when all indices are 0-9
        return f"{name[0]}[{name[1]},{name[2]},{name[3]}]"
    return name


def parse_spec(text: str) -> SystemSpec:
    """Parse the JSON spec-file format:

        {"S": [[p,q,r], ...], "values": {"a[1,0,0]": "1/2", ...}}

    "values" is optional but, when present, must cover all 3l parameters.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecError("spec file must be a JSON object")
    unknown = set(doc) - {"S", "values", "name"}
    if unknown:
        raise SpecError(f"unknown spec field(s): {', '.join(sorted(unknown))}")
    if "S" not in doc:
        raise SpecError("spec file is missing the field 'S'")
    raw = doc["S"]
    if not isinstance(raw, list) or not raw:
        raise SpecError("field 'S' must be a non-empty list of [p,q,r] triples")
    triples = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or not all(isinstance(x, int) for x in entry)
        ):
            raise SpecError(f"S[{i}] must be a list of three integers, got {entry!r}")
        triples.append(STriple(*entry))
    spec = SystemSpec(tuple(triples))
    if "values" in doc and doc["values"] is not None:
        values = doc["values"]
        if not isinstance(values, dict):
            raise SpecError("field 'values' must be an object of name -> value strings")
        try:
            spec = spec.with_values(values)
        except ValueError as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"invalid parameter value: {exc}") from None
    return spec


def load_spec(path) -> SystemSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def quadratic_family(values=None) -> SystemSpec:
    """The nine-parameter quadratic family: S = {(1,0,0), (0,1,0), (0,0,1)}."""
    spec = SystemSpec((STriple(1, 0, 0), STriple(0, 1, 0), STriple(0, 0, 1)))
    if values is not None:
        spec = spec.with_values(values)
    return spec


def bench_families() -> dict[str, SystemSpec]:
    """The three reference families used by the benchmark harness."""
    return {
        "S1": SystemSpec(
            (STriple(2, 0, 0), STriple(1, 0, 0), STriple(0, 1, 0), STriple(0, 0, 1))
        ),
        "S2": quadratic_family(),
        "S3": SystemSpec((STriple(1, 0, 0), STriple(0, 0, 1))),
    }


def concrete_field(spec: SystemSpec) -> list[dict[tuple[int, int, int], CycQ]]:
    """The three field components as monomial -> CycQ maps (values required).

    Component m is kappa_m x_m plus its block's parameter terms with the
    block z-weight folded into the coefficients.
    """
    values = spec.require_values()
    comps: list[dict[tuple[int, int, int], CycQ]] = [{}, {}, {}]
    for m in range(3):
        unit = tuple(1 if i == m else 0 for i in range(3))
        comps[m][unit] = KAPPA[m]
    for slot, (block, mono) in enumerate(spec.phase_terms):
        coeff = BLOCK_WEIGHTS[block] * values[slot]
        if coeff:
            prev = comps[block].get(mono)
            comps[block][mono] = coeff if prev is None else prev + coeff
    return comps


def symbolic_field(spec: SystemSpec, max_degree: int) -> list[PhasePoly]:
    """The three field components with symbolic ParamPoly coefficients."""
    n = spec.nvars
    comps = []
    for m in range(3):
        unit = tuple(1 if i == m else 0 for i in range(3))
        terms: dict[tuple[int, int, int], ParamPoly] = {
            unit: ParamPoly.constant(n, KAPPA[m])
        }
        for slot, (block, mono) in enumerate(spec.phase_terms):
            if block == m:
                coeff = ParamPoly.variable(n, slot, BLOCK_WEIGHTS[block])
                prev = terms.get(mono)
                terms[mono] = coeff if prev is None else prev + coeff
        comps.append(PhasePoly(max_degree, terms))
    return comps
