"""Lattices spanned by a fibre class and a section class.

The raw Gram matrix [[0, d], [d, T^2]] is reduced to a named normal form;
for K3[n] and Kummer types the answer alternates with the parity of n.
"""
from quadlat import lagrangian_section_lattice

for tag in ("K3n", "Kum"):
    for n in range(2, 8):
        s = lagrangian_section_lattice(tag, n)
        print(f"{tag:4} n={n}: raw {[list(r) for r in s.raw_gram]} -> {s.name}")
s = lagrangian_section_lattice("Og10")
print(f"Og10      : raw {[list(r) for r in s.raw_gram]} -> {s.name}")
