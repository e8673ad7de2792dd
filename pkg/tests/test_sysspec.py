"""System family definitions, parameter layout, the L map and spec parsing."""

import json
import random

import pytest

from resint.cyclotomic import CycQ, ONE, ZERO, ZETA, ZETA2
from resint.sysspec import (
    SpecError,
    STriple,
    SystemSpec,
    bench_families,
    concrete_field,
    l_map,
    parse_spec,
    quadratic_family,
    symbolic_field,
)


def test_parse_minimal_family():
    spec = parse_spec('{"S": [[1,0,0],[0,0,1]]}')
    assert spec.l == 2
    assert spec.nvars == 6
    assert spec.values is None


def test_parse_rejects_degree_zero_triple():
    with pytest.raises(SpecError):
        parse_spec('{"S": [[0,0,0]]}')


def test_parse_four_triples():
    spec = parse_spec('{"S": [[2,0,0],[1,0,0],[0,1,0],[0,0,1]]}')
    assert spec.l == 4
    assert spec.nvars == 12


def test_triple_invariants():
    with pytest.raises(SpecError):
        SystemSpec((STriple(-2, 1, 1),))
    with pytest.raises(SpecError):
        SystemSpec((STriple(0, -1, 2),))
    # p = -1 is legal when q + r >= 2
    spec = SystemSpec((STriple(-1, 1, 1),))
    assert spec.l == 1


def test_duplicate_triple_rejected():
    with pytest.raises(SpecError):
        SystemSpec((STriple(1, 0, 0), STriple(1, 0, 0)))


def test_parse_error_diagnostics():
    with pytest.raises(SpecError, match="line"):
        parse_spec('{"S": [[1,0,0],')
    with pytest.raises(SpecError, match="unknown spec field"):
        parse_spec('{"S": [[1,0,0]], "bogus": 1}')
    with pytest.raises(SpecError, match="S"):
        parse_spec('{"values": {}}')
    with pytest.raises(SpecError, match="three integers"):
        parse_spec('{"S": [[1,0]]}')


def test_parameter_naming_blocks():
    spec = quadratic_family()
    assert spec.param_names == (
        "a[1,0,0]", "a[0,1,0]", "a[0,0,1]",
        "b[0,1,0]", "b[0,0,1]", "b[1,0,0]",
        "c[0,0,1]", "c[1,0,0]", "c[0,1,0]",
    )


def test_block_layout_matches_l_map():
    # block slots weight nu by (p,q,r), (r,p,q), (q,r,p) respectively
    spec = bench_families()["S1"]
    l = spec.l
    for j, t in enumerate(spec.triples):
        p, q, r = t.astuple()
        assert spec.slot_shifts[j] == (p, q, r)
        assert spec.slot_shifts[l + j] == (r, p, q)
        assert spec.slot_shifts[2 * l + j] == (q, r, p)


def test_l_map_zero_and_unit():
    spec = quadratic_family()
    assert l_map(spec, (0,) * 9) == (0, 0, 0)
    # slot index 5 is the b[1,0,0] slot: its weight is (r,p,q) = (1,0,0)
    e6 = tuple(1 if i == 5 else 0 for i in range(9))
    assert l_map(spec, e6) == (1, 0, 0)


def test_l_map_linearity_and_degree_bound():
    spec = bench_families()["S1"]
    rng = random.Random(2)
    for _ in range(50):
        nu = tuple(rng.randint(0, 3) for _ in range(12))
        mu = tuple(rng.randint(0, 3) for _ in range(12))
        lnu = l_map(spec, nu)
        lmu = l_map(spec, mu)
        both = l_map(spec, tuple(a + b for a, b in zip(nu, mu)))
        assert both == tuple(a + b for a, b in zip(lnu, lmu))
        assert sum(lnu) >= sum(nu)


def test_l_map_length_mismatch():
    with pytest.raises(SpecError):
        l_map(quadratic_family(), (0,) * 6)


def test_quadratic_family_shape():
    spec = quadratic_family()
    assert spec.l == 3
    assert spec.nvars == 9
    assert [t.astuple() for t in spec.triples] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_values_by_mapping_and_aliases():
    values = {name: "0" for name in quadratic_family().param_names}
    values["a[1,0,0]"] = "1/2"
    spec = quadratic_family(values)
    assert spec.values[0] == CycQ.parse("1/2")
    # single-digit aliases are accepted on input
    alias = {"a100": "1", "a010": "0", "a001": "0", "b100": "0", "b010": "0",
             "b001": "0", "c100": "0", "c010": "0", "c001": "z"}
    spec = quadratic_family(alias)
    assert spec.values[0] == ONE
    assert spec.values[6] == ZETA


def test_partial_values_rejected_with_names():
    with pytest.raises(SpecError, match=r"b\[1,0,0\]"):
        quadratic_family({"a[1,0,0]": "1"})


def test_unknown_parameter_rejected():
    with pytest.raises(SpecError, match="unknown parameter"):
        quadratic_family({"d[1,0,0]": "1"})


def test_values_round_trip_via_json():
    values = {name: "0" for name in quadratic_family().param_names}
    values["b[0,1,0]"] = "1 + 1*z"
    spec = quadratic_family(values)
    doc = spec.to_json_dict()
    again = parse_spec(json.dumps(doc))
    assert again.values == spec.values
    assert again.triples == spec.triples


def test_require_values():
    with pytest.raises(SpecError):
        quadratic_family().require_values()


def test_restricted_subfamily_field():
    # b001 = c100 = 0, b010 = 1 reproduces the restricted quadratic system
    vals = {
        "a100": "2", "a010": "3", "a001": "5",
        "b100": "7", "b010": "1", "b001": "0",
        "c100": "0", "c010": "11", "c001": "13",
    }
    spec = quadratic_family(vals)
    F = concrete_field(spec)
    assert F[0] == {(1, 0, 0): ONE, (2, 0, 0): CycQ(2), (1, 1, 0): CycQ(3), (1, 0, 1): CycQ(5)}
    assert F[1] == {(0, 1, 0): ZETA, (1, 1, 0): ZETA * CycQ(7), (0, 2, 0): ZETA}
    assert F[2] == {(0, 0, 1): ZETA2, (0, 1, 1): ZETA2 * CycQ(11), (0, 0, 2): ZETA2 * CycQ(13)}


def test_all_zero_values_give_linear_field():
    spec = quadratic_family({n: "0" for n in quadratic_family().param_names})
    F = concrete_field(spec)
    assert F[0] == {(1, 0, 0): ONE}
    assert F[1] == {(0, 1, 0): ZETA}
    assert F[2] == {(0, 0, 1): ZETA2}


def test_symbolic_field_structure():
    spec = bench_families()["S3"]
    comps = symbolic_field(spec, 6)
    # component 1: x1 plus one term per a-slot
    assert len(comps[0].terms) == 1 + spec.l
    unit = comps[0].terms[(1, 0, 0)]
    assert unit.terms == {(0,) * 6: ONE}
    # the a[1,0,0] slot contributes x1^2 with the bare parameter
    a_first = comps[0].terms[(2, 0, 0)]
    assert list(a_first.terms) == [(1, 0, 0, 0, 0, 0)]


def test_bench_families_definitions():
    fams = bench_families()
    assert [t.astuple() for t in fams["S1"].triples] == [(2, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [t.astuple() for t in fams["S2"].triples] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [t.astuple() for t in fams["S3"].triples] == [(1, 0, 0), (0, 0, 1)]
