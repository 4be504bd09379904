# Regenerates crates/core/data/fields.toml with PARI/GP (cypari2).
# The Rust loader re-verifies every item, so this script is only a convenience.
import cypari2, sys
pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)

CUBICS = {1: ("x^3-3*x+1", "6.0.419904.1"), 2: ("x^3+x^2-2*x-1", "6.0.153664.1"),
          3: ("x^3+x^2-6*x-7", "6.0.8340544.1"), 4: ("x^3+x^2-10*x-8", "6.0.59105344.1")}

def q(v):
    v = pari(v)
    return f'"{pari.numerator(v)}/{pari.denominator(v)}"'

def poly_coeffs(pol, n):
    pol = pari(pol)
    return [pari.polcoef(pol, k) for k in range(n)]

def ivec(v):
    return "[" + ", ".join(str(int(c)) for c in v) + "]"

out = ["# Cyclic sextic CM fields K = F(i), F the cyclic cubic field of conductor 9, 7, 19, 31.",
       "# Generated by tools/gen_fields.py (PARI/GP); every item is re-verified at load.",
       "# Element vectors are coordinates on the integral basis; rationals are \"num/den\".",
       "format_version = 1", ""]
for i, (cubic, label) in CUBICS.items():
    pol = pari.polredabs(pari(f"polcompositum({cubic}, x^2+1)[1]"))
    nf = pari.nfinit(pol)
    bnf = pari.bnfinit(pol, 1)
    zk = pari("(n)->n.zk")(nf)
    disc = int(pari.nfdisc(pol))
    auts = pari.nfgaloisconj(nf)
    sigma = None
    for a in auts:
        # order of the automorphism
        cur = pari("x"); k = 0
        while True:
            cur = pari.subst(pari.lift(cur), "x", a) % pol if k > 0 else a
            k += 1
            if pari.lift(pari.Mod(cur, pol)) == pari("x"):
                break
        if k == 6:
            sigma = a
            break
    tu = bnf.bnf_get_tu()
    fu = bnf.bnf_get_fu()
    cyc = [int(c) for c in bnf.bnf_get_cyc()]
    out.append(f"# {label}: |disc| = {abs(disc)}")
    out.append("[[field]]")
    out.append(f"id = {i}")
    out.append(f'label = "{label}"')
    out.append(f"defining_polynomial = {ivec(poly_coeffs(pol, 7))}  # constant term first")
    out.append(f"abs_discriminant = {abs(disc)}")
    out.append("integral_basis = [")
    for w in zk:
        out.append("  [" + ", ".join(q(c) for c in poly_coeffs(w, 6)) + "],")
    out.append("]")
    out.append("# sigma(theta) in the power basis; sigma has order 6 and sigma^3 is complex conjugation")
    out.append("galois_generator = [" + ", ".join(q(c) for c in poly_coeffs(pari.lift(sigma), 6)) + "]")
    out.append(f"torsion_order = {int(tu[0])}")
    out.append(f"torsion_generator = {ivec(pari.nfalgtobasis(nf, tu[1]))}")
    out.append("fundamental_units = [")
    for u in fu:
        out.append("  " + ivec(pari.nfalgtobasis(nf, u)) + ",")
    out.append("]")
    h = 1
    for c in cyc: h *= c
    out.append(f"class_number = {h}")
    out.append(f"class_group_cyc = {ivec(cyc)}")
    # cubic subfield: fixed field of complex conjugation
    subs = pari.nfsubfields(pol, 3)
    cpol, cemb = subs[0][0], subs[0][1]
    out.append(f"cubic_polynomial = {ivec(poly_coeffs(pari.polredabs(cpol), 4))}")
    # root of the reduced cubic inside K
    red = pari.polredabs(cpol)
    nfy = pari.nfinit(pari.subst(pol, "x", "y"))
    roots = pari.nfroots(nfy, red)
    out.append(f"cubic_root = {ivec(pari.nfalgtobasis(nfy, roots[0]))}")
    # index primes
    index = int(pari(f"nfinit({pol}).index"))
    ip = [int(p) for p in pari.factor(index)[0]] if index > 1 else []
    for p in ip:
        for pr in pari.idealprimedec(nf, p):
            out.append("[[field.index_prime]]")
            out.append(f"p = {p}")
            out.append(f"generator = {ivec(pr[1])}")
            out.append(f"e = {int(pr[2])}")
            out.append(f"f = {int(pr[3])}")
    if h > 1:
        # pick small split primes whose classes generate the class group
        chosen = []
        seen = []
        for p in pari.primes(200):
            p = int(p)
            if index % p == 0 or disc % p == 0 or p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
                continue
            for pr in pari.idealprimedec(nf, p):
                if int(pr[3]) != 1: continue
                cl = [int(c) for c in pari.bnfisprincipal(bnf, pr, 0)]
                if all(c == 0 for c in cl) or cl in seen: continue
                if len(chosen) == 1:
                    s = [(a + b) % m for a, b, m in zip(cl, seen[0], cyc)]
                    if all(c == 0 for c in s): continue
                chosen.append(pr); seen.append(cl)
                if len(chosen) == len(cyc): break
            if len(chosen) == len(cyc): break
        for pr, order in zip(chosen, cyc):
            gen = pari.bnfisprincipal(bnf, pari.idealpow(nf, pr, order))
            assert all(int(c) == 0 for c in gen[0])
            out.append("[[field.class_generator]]")
            out.append(f"p = {int(pr[0])}")
            out.append(f"generator = {ivec(pr[1])}")
            out.append(f"order = {order}")
            out.append(f"principalization = {ivec(gen[1])}")
    out.append("")
print("\n".join(out))
