"""Where a binary constraint function lands on the approximability map."""

import random
from fractions import Fraction

from spincount import PBFunction, binary, bit_flip, classify_two_spin, permute


def row(table):
    return " ".join(str(v) for v in table)

# The five regimes, one representative each.
examples = [
    ("disequality", binary(0, 1, 1, 0)),
    ("implication-like", binary(1, 1, 0, 1)),
    ("skewed ferromagnet", binary(3, 4, 1, 2)),
    ("symmetric ferromagnet", binary(2, 1, 1, 2)),
    ("antiferromagnet", binary(1, 2, 2, 1)),
    ("monotone antiferromagnet", binary(1, 2, 2, 3)),
]
for name, f in examples:
    verdict = classify_two_spin(f)
    print(f"{name:26s} [{row(f.table)}]  ->  {verdict.tag.value}")
    if verdict.note:
        print(f"{'':26s} note: {verdict.note}")

# The verdict depends only on the function up to symmetry: flipping both
# input bits, swapping the arguments, and positive scaling never move it.
rng = random.Random(7)
f = binary(1, 1, 0, 1)
variants = [
    bit_flip(f),
    permute(f, (1, 0)),
    PBFunction(2, tuple(Fraction(5, 3) * v for v in f.table)),
]
tags = {classify_two_spin(g).tag for g in [f, *variants]}
print("invariant under symmetry:", [t.value for t in tags])

# The decisive evidence is exposed: the two mixed Fourier coefficients.
v = classify_two_spin(binary(3, 4, 1, 2))
print("mixed coefficients:", v.f01, v.f10, "-> opposite signs force the middle regime")
