"""Build the index-2 gluing of v^perp in the Mukai lattice with <-6>.

Its discriminant form is compared with that of the O'Grady-10 lattice
U^3 + E8(-1)^2 + A2(-1).
"""
from quadlat import bb_lattice, discriminant_form, gamma_v, lattice_info

G = gamma_v()
info = lattice_info(G)
print(f"rank {info.rank}, signature {tuple(info.signature)}, det {info.determinant}, even {info.even}")

A, B = discriminant_form(G), discriminant_form(bb_lattice("Og10"))
print("A_G orders:", A.orders, "q:", [str(A.q(g)) for g in A.generators()])
print("A_Og10 orders:", B.orders, "q:", [str(B.q(g)) for g in B.generators()])
print("isomorphic:", A.is_isomorphic(B))
