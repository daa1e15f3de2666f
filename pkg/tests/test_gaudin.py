from __future__ import annotations

from fractions import Fraction

import pytest

from g2sugawara import g2, gaudin, pbw
from g2sugawara.exact import RationalFunctionU
from g2sugawara.gaudin import ConfigError, GaudinConfig, MuElement
from g2sugawara.pbw import LoopElement, loop_gen


def config(**kw):
    data = {"ell": 1, "z": ["0"], "lambda": [["1", "0"]]}
    data.update(kw)
    return GaudinConfig.from_json(data)


def test_coordinates():
    assert gaudin.g_from_h((1, 0)) == (3, 0)
    assert gaudin.g_from_h((0, 1)) == (1, 1)
    # alpha_j(h_i) = a_ij
    assert gaudin.simple_root_h(1) == (2, -3)
    assert gaudin.simple_root_h(2) == (-1, 2)


@pytest.mark.parametrize(
    "mu,regular",
    [((1, 2), True), ((2, -5), True), ((1, 0), False), ((1, 1), False), ((1, -2), False), ((2, -1), False)],
)
def test_regularity(mu, regular):
    assert MuElement(*mu).is_regular() is regular


def test_evaluation_hom():
    mu = MuElement(2, 3)
    x = loop_gen(1, 1, -1) * loop_gen(1, 2, -2)
    out = gaudin.evaluation_hom(x, mu, Fraction(1, 2))
    g11 = pbw.encode(pbw.G11, 0)
    g12 = pbw.encode(g2.GEN_INDEX[(1, 2)], 0)
    assert out == LoopElement({(g11, g12): 2 * 4, (g12,): 2 * 4})
    with pytest.raises(ValueError):
        gaudin.evaluation_hom(x, mu, 0)


def test_sigma():
    x = loop_gen(1, 2, -1) * loop_gen(2, 1, -2) + loop_gen(1, 1, -1)
    y = gaudin.sigma(x)
    assert y == loop_gen(2, 1, -2) * loop_gen(1, 2, -1) - loop_gen(1, 1, -1)
    assert gaudin.sigma(y) == x


def test_gamma_single_site():
    g1, g2 = gaudin.gamma_functions(config())
    assert g1 == RationalFunctionU.simple_pole(3, 0)
    assert g2 == RationalFunctionU()


def test_bethe_closed_form_single_root():
    # lambda(h1)/w - mu(h1) = 0 has the root w = lambda(h1)/mu(h1)
    cfg = config(**{"lambda": [["3", "0"]], "mu": ["2", "0"], "bethe": [{"w": "3/2", "label": 1}]})
    assert gaudin.bethe_residuals(cfg) == [0]
    moved = config(**{"lambda": [["3", "0"]], "mu": ["2", "0"], "bethe": [{"w": "7/4", "label": 1}]})
    assert gaudin.bethe_residuals(moved) != [0]


def test_bethe_two_roots_formula():
    cfg = config(
        z=["0", "1"],
        ell=2,
        **{"lambda": [["1", "2"], ["0", "1"]], "bethe": [{"w": "3", "label": 1}, {"w": "5", "label": 2}]},
    )
    r = gaudin.bethe_residuals(cfg)
    # root 1 sees alpha_2(h_1) = a_12 = -1 from the other root
    assert r[0] == Fraction(1, 3) + 0 - Fraction(-1, 3 - 5)
    assert r[1] == Fraction(2, 5) + Fraction(1, 4) - Fraction(-3, 5 - 3)


@pytest.mark.parametrize("tag", ["S2", "S3"])
@pytest.mark.parametrize("lam", [(1, 0), (2, 3), (Fraction(1, 2), -1)])
def test_gaudin_single_site(tag, lam):
    cert = gaudin.verify_gaudin_l1(tag, lam)
    assert cert.ok, [i.name for i in cert.items]


def test_trivial_weight_gives_zero():
    c, a = gaudin.operator_eigenvalue("S2", (0, 0))
    assert (c, a) == (0, 2)
    assert gaudin.eigenvalue("S2", config(**{"lambda": [["0", "0"]]})) == RationalFunctionU()


def test_shift_algebra_b_pairs():
    cert = gaudin.verify_theorem_c([(1, 2)], pairs="b-pairs")
    assert cert.ok, [i.name for i in cert.items if not i.ok]


def test_shift_algebra_rejects_singular_mu():
    with pytest.raises(ValueError):
        gaudin.verify_theorem_c([(1, 1)])


@pytest.mark.parametrize(
    "data,field",
    [
        ([], "config"),
        ({"z": ["0"], "lambda": [["1", "0"]]}, "ell"),
        ({"ell": 0, "z": [], "lambda": []}, "ell"),
        ({"ell": 1, "z": ["0", "1"], "lambda": [["1", "0"]]}, "z"),
        ({"ell": 2, "z": ["1", "1"], "lambda": [["1", "0"], ["1", "0"]]}, "z"),
        ({"ell": 1, "z": ["x"], "lambda": [["1", "0"]]}, "z[0]"),
        ({"ell": 1, "z": ["0"], "lambda": [["1"]]}, "lambda[0]"),
        ({"ell": 1, "z": ["0"], "lambda": [["1", 0.5]]}, "lambda[0][1]"),
        ({"ell": 1, "z": ["0"], "lambda": [["1", "0"]], "bethe": [{"w": "0", "label": 1}]}, "bethe[0].w"),
        ({"ell": 1, "z": ["0"], "lambda": [["1", "0"]], "bethe": [{"w": "1", "label": 3}]}, "bethe[0].label"),
        ({"ell": 1, "z": ["0"], "lambda": [["1", "0"]], "mu": ["1"]}, "mu"),
    ],
)
def test_config_errors_name_field(data, field):
    with pytest.raises(ConfigError) as info:
        GaudinConfig.from_json(data)
    assert info.value.field == field
