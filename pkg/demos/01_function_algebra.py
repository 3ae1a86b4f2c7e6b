"""Tables, Fourier coefficients, and the operator algebra on pseudo-Boolean functions."""

from fractions import Fraction

from spincount import (
    EQ3,
    XOR3,
    binary,
    fourier,
    inverse_fourier,
    pin,
    property_report,
    sum_out,
)


def row(table):
    return " ".join(str(v) for v in table)


# A function is a truth table indexed most-significant-bit first:
# index(x0, x1) = 2*x0 + x1.
f = binary(3, 1, 2, 4)
print("table        ", row(f.table))
print("f(0,1)       ", f.table[0b01])

# The Fourier table is the scaled Walsh-Hadamard transform; round-trip is exact.
coeffs = fourier(f)
print("fourier      ", row(coeffs.table))
print("round trip   ", row(inverse_fourier(coeffs).table))

# Two classical tables and their transforms: ternary parity maps to equality.
print("fourier(xor3)", row(fourier(XOR3).table))
print("fourier(eq3) ", row(fourier(EQ3).table))

# Operators: sum out a coordinate, pin one to a value.
print("sum_out x0   ", row(sum_out(f, 0).table))
print("pin x0 = 1   ", row(pin(f, 0, 1).table))

# The property report bundles the structural predicates used downstream.
for key, value in property_report(binary(2, 1, 1, 2)).record():
    print(f"  {key} = {value}")

# Exact rationals everywhere; nothing is floated.
g = binary(Fraction(1, 3), Fraction(1, 6), Fraction(1, 6), Fraction(1, 3))
print("rational sum ", row(sum_out(sum_out(g, 0), 0).table))
