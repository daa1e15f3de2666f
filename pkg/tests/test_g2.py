from __future__ import annotations

from fractions import Fraction

from g2sugawara import g2
from g2sugawara.exact import SQRT2, ExactScalar


def _add(x: dict, y: dict, c=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def test_dual_pairing():
    b = g2.build_basis()
    assert g2.bilinear_form(b.primal[0], b.dual[0]) == 1
    assert g2.bilinear_form(b.primal[0], b.dual[1]) == 0
    assert g2.printed_dual_basis()[0] == b.dual[0]


def test_dual_bases_are_dual():
    b = g2.build_basis()
    for a, x in enumerate(b.primal):
        for c, y in enumerate(b.dual):
            assert g2.bilinear_form(x, y) == (1 if a == c else 0)


def test_form_values():
    x = g2.f(1, 1) + g2.f(2, 2).scale(-1)
    assert g2.bilinear_form(x, x) == Fraction(2, 3)
    assert g2.bilinear_form(g2.f(1, 2).scale(3), g2.f(2, 1).scale(3)) == 3


def test_printed_brackets():
    s = g2.structure_constants()
    assert s.bracket(g2.gen(1, 2), g2.gen(2, 1)) == {g2.GEN_INDEX[(1, 1)]: 3, g2.GEN_INDEX[(2, 2)]: -3}
    assert s.bracket(g2.gen(1, 4), g2.gen(2, 4)) == {g2.GEN_INDEX[(4, 3)]: 2 * SQRT2}
    assert s.bracket(g2.gen(1, 4), g2.gen(4, 1)) == {g2.GEN_INDEX[(1, 1)]: ExactScalar(2)}


def test_matrix_entries():
    trace = {}
    for i in (1, 2, 3):
        trace = _add(trace, g2.g_matrix_entry(i, i))
    assert trace == {}
    assert g2.g_matrix_entry(4, 4) == {}
    assert _add(g2.g_matrix_entry(1, 4), g2.g_matrix_entry(5, 2), SQRT2) == {}


def test_structure_report_clean():
    assert g2.structure_report() == {"jacobi": 0, "antisymmetry": 0, "invariance": 0, "listed_relations": 0}


def test_uniform_commutators_and_beta():
    assert g2.uniform_commutator_failures() == []
    assert g2.beta_failures() == {"antisymmetry": 0, "invariance": 0}


def test_tensor_identities():
    rel = g2.tensor_relations()
    assert len(rel) == 12
    assert all(rel.values()), [k for k, v in rel.items() if not v]
    assert g2.permutation_operator().trace() == 7


def test_omega_from_basis_matches_expansion():
    assert g2.omega_from_basis() == g2.omega_expansion()


def test_chevalley_and_serre():
    rel = g2.chevalley_relations()
    assert "(ad e1)^2 e2" in rel and "(ad e2)^4 e1" in rel
    assert all(rel.values())


def test_roles_and_roots():
    roles = [g2.generator_role(a) for a in range(g2.NGEN)]
    assert roles.count("cartan") == 2
    assert roles.count("raising") == roles.count("lowering") == 6
    roots = {g2.positive_root(a) for a in range(g2.NGEN) if g2.generator_role(a) == "raising"}
    assert roots == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}


def test_rational_frame():
    brackets, gram = g2.rational_structure()
    for row in brackets:
        for entry in row:
            for _, c in entry:
                assert not isinstance(c, ExactScalar) or c.is_rational()
