from __future__ import annotations

import pytest

from g2sugawara import pbw, sugawara
from g2sugawara.exact import ParamPolynomial
from g2sugawara.pbw import LoopElement, loop_gen


def test_matrix_entries_at_any_mode():
    for r in (-2, 0, 3):
        m = sugawara.loop_g_matrix(r)
        assert m[0, 0] + m[1, 1] + m[2, 2] == LoopElement()
        assert m[3, 3] == LoopElement()


def test_g_entry_convention():
    m = sugawara.loop_g_matrix(-1)
    assert m.g_entry(1, 2) == loop_gen(1, 2, -1)
    assert m.g_entry(2, 1) == loop_gen(2, 1, -1)


def test_trace_of_single_matrix_vanishes():
    assert sugawara.trace_product([sugawara.loop_g_matrix(-1)]) == LoopElement()


def test_trace_builder_matches_naive_trace():
    engine = sugawara.vacuum_engine()
    builder = sugawara.TraceBuilder(engine)
    for modes in [(-1, -1), (-2, -1, -1), (-1, -2, -1)]:
        naive = sugawara.trace_product([sugawara.loop_g_matrix(r) for r in modes])
        assert engine.state_to_element(builder.trace(modes)) == engine.normal_form(naive)


def test_s2_symbol():
    s2 = sugawara.build_ss_vector("S2").value
    assert sugawara.symbol(s2) == sugawara.commutative_trace_power(2)


def test_s3_is_derivative_of_s2():
    s2 = sugawara.build_ss_vector("S2").value
    s3 = sugawara.build_ss_vector("S3").value
    assert s3 + sugawara.derivative(s2).scale(3) == LoopElement()


@pytest.mark.parametrize("tag", sugawara.TAGS)
def test_weight_zero(tag):
    assert sugawara.ss_weight(tag) == (0, 0)


@pytest.mark.parametrize("tag", ["S2", "S3", "S4", "S5"])
def test_invariance(tag):
    cert = sugawara.verify_invariance(tag)
    assert len(cert.items) == 15
    assert cert.ok, [i.name for i in cert.items if not i.ok]


def test_s2_away_from_critical_level():
    cert = sugawara.verify_invariance("S2", "g11-1", level=None)
    residue = cert.items[0].residue
    k = ParamPolynomial.variable("K")
    assert residue == loop_gen(1, 1, -1).scale(144 + 12 * k)


def test_wrong_combination_fails():
    cert = sugawara.verify_invariance("S6", "g11-1", definition=((1, (-1,) * 6),))
    assert not cert.ok
    assert cert.items[0].residue_terms > 0


def test_mutation_fails():
    cert = sugawara.verify_invariance("S6", "g11-1", sugawara.mutated_definition("S6", 3))
    assert not cert.ok


def test_single_traces_are_zero_mode_invariant():
    for modes in [(-1, -1), (-3, -1, -2), (-2, -1, -1, -1)]:
        assert sugawara.zero_mode_residue(modes) == 0


def test_transposition_identity():
    assert sugawara.transposition_identity() == LoopElement()


def test_casimir_centrality():
    cert = sugawara.verify_casimir()
    assert cert.ok


def test_corollary_relations():
    cert = sugawara.verify_corollary_relations()
    assert len(cert.items) == 3
    assert cert.ok


def test_unknown_vector():
    with pytest.raises(KeyError):
        sugawara.build_ss_vector("S7")


def test_translation_commutes_with_normal_ordering():
    engine = pbw.Engine(pbw.GeneratorOrder.VACUUM, level=-12)
    x = loop_gen(2, 1, -1) * loop_gen(1, 2, -2) * loop_gen(1, 1, -1)
    lhs = engine.normal_form(pbw.apply_translation(x))
    rhs = engine.normal_form(pbw.apply_translation(engine.normal_form(x)))
    assert lhs == rhs
