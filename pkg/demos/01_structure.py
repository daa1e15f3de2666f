"""Walk through the exceptional Lie algebra: basis, brackets, tensor operators."""
from __future__ import annotations

from g2sugawara import g2

# the fourteen generators and their roles
for a in range(g2.NGEN):
    print(g2.generator_name(a), g2.generator_role(a), g2.positive_root(a))

table = g2.structure_constants()
# [G12, G21] = 3 G11 - 3 G22
print(table.bracket(g2.gen(1, 2), g2.gen(2, 1)))
# the sqrt(2) shows up when two brackets involve the index 4
print(table.bracket(g2.gen(1, 4), g2.gen(2, 4)))

print("structure checks (failure counts):", g2.structure_report())
print("tensor identities:", g2.tensor_relations())
print("Chevalley/Serre:", all(g2.chevalley_relations().values()))
