"""Gaudin eigenvalues from the Harish-Chandra images, cross-checked on one site."""
from __future__ import annotations

from fractions import Fraction

from g2sugawara import gaudin

cfg = gaudin.GaudinConfig.from_json({"ell": 2, "z": ["0", "1"], "lambda": [["1", "0"], ["0", "2"]]})
for tag in ("S2", "S3", "S4"):
    print(tag, gaudin.eigenvalue(tag, cfg).render())

# one site, no shift: the operator acts by a scalar times (z-u)^-a
for lam in ((1, 0), (2, 3)):
    cert = gaudin.verify_gaudin_l1("S2", lam)
    print("lambda =", lam, "C =", cert.extra["operator_constant"], "agrees:", cert.ok)

# Bethe equation with one root: lambda(h1)/w = mu(h1)
cfg = gaudin.GaudinConfig.from_json(
    {"ell": 1, "z": ["0"], "lambda": [["3", "0"]], "mu": ["2", "0"], "bethe": [{"w": "3/2", "label": 1}]}
)
print("residuals:", gaudin.bethe_residuals(cfg))

# shift-of-argument algebra at a regular mu
cert = gaudin.verify_theorem_c([(Fraction(1), Fraction(2))], pairs="b-pairs")
print("named B-pairs commute:", cert.ok)
