"""Build the Segal-Sugawara vectors and test invariance in the vacuum module."""
from __future__ import annotations

from g2sugawara import sugawara, walgebra

for tag in sugawara.TAGS:
    cert = sugawara.verify_invariance(tag)
    vec = sugawara.build_ss_vector(tag)
    print(f"{tag}: {len(vec.value)} terms, invariant={cert.ok}, {cert.wall_time:.2f}s")

# away from the critical level the quadratic vector is not killed by G11[1]
off = sugawara.verify_invariance("S2", "g11-1", level=None)
print("S2 residue at generic K:", off.items[0].residue.dump())

# perturbing a coefficient of S6 breaks invariance
bad = sugawara.verify_invariance("S6", "g11-1", sugawara.mutated_definition("S6", 3))
print("mutated S6 invariant?", bad.ok, "residue terms:", bad.items[0].residue_terms)

# Harish-Chandra images versus the Miura coefficients
w = walgebra.miura_expand()
print("w2 =", w[2].render())
for item in walgebra.verify_theorem_b().items:
    print(item.name, "ok" if item.ok else "MISMATCH")
