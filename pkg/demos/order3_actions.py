"""Two order-3 actions on bb(K3n, 2) with invariant part containing <6>.

For each invariant lattice T we glue T with <2> along 3-torsion, then ask
whether the result splits off a hyperbolic plane. The first example is settled
by definiteness; the second is left open by the default certificates and
closed by the opt-in mod-3 isotropy test.
"""
from quadlat import contains_U, direct_sum, induced_check, lattice_info, primitive_gluings, rank_one
from quadlat.catalog import simple_lattice


def show(label, T):
    print(f"== {label}")
    for M in primitive_gluings(T, rank_one(2), 3):
        info = lattice_info(M)
        print(f"gluing: rank {info.rank}, signature {tuple(info.signature)}, det {info.determinant}")
    rep = induced_check("K3n", 2, T, 3, "nonsymplectic", "trivial")
    for v in rep.verdicts:
        print(f"contains U: {v.state} (certificate={v.certificate}, bound={v.bound})")
    print(f"verdict: {rep.final}")
    for cand in rep.candidates:
        ext = contains_U(cand, extended=True)
        print(f"with mod-p certificate: {ext.state} ({ext.certificate})")
    print()


show("T = <6>", rank_one(6))
show("T = <6> + E6v(-3)", direct_sum(rank_one(6), simple_lattice("E6v", -3)))
