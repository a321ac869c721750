"""First steps: build identical-particle states and take inner products.

Three qubits live in three spatial modes A, B, C, each with spin up/down.
A state is a combination of elementary products |chi_1, chi_2, chi_3>; the
particles carry no labels, so a product and any reordering of it are the
same state (up to sign, for fermions). Inner products reduce to a matrix
permanent (bosons) or determinant (fermions) of single-particle overlaps.
"""

import math

from idqsim import (
    Spin,
    Statistics,
    elementary,
    inner,
    norm,
    normalize,
    standard_space,
)

space = standard_space()
a_dn = space.ket("A", Spin.DOWN)
a_up = space.ket("A", Spin.UP)
b_dn = space.ket("B", Spin.DOWN)
c_up = space.ket("C", Spin.UP)

# one qubit per site: already unit norm, permanent of the identity
separated = elementary(Statistics.BOSON, (a_dn, b_dn, c_up))
print("separated norm:", norm(separated))

# pile two identical spin-down bosons plus one spin-up into site A;
# the repeated ket doubles the norm squared: <phi|phi> = 2
piled = elementary(Statistics.BOSON, (a_dn, a_dn, a_up))
print("<A-down, A-down, A-up | same> =", inner(piled, piled).real)
print("normalizing coefficient:", normalize(piled).terms[0].coeff.real,
      "(should be 1/sqrt(2) =", 1 / math.sqrt(2), ")")

# exchanging two entries is not a new state
swapped = elementary(Statistics.BOSON, (a_dn, a_up, a_dn))
print("overlap with a reordering:", inner(normalize(piled),
                                          normalize(swapped)).real)

# fermions: the same construction annihilates itself (exclusion principle)
excluded = elementary(Statistics.FERMION, (a_dn, a_dn, a_up))
print("fermionic repeated-ket norm:", norm(excluded), "(exactly zero)")

# distinct kets are fine for fermions, and swapping two flips the sign
pair = elementary(Statistics.FERMION, (a_dn, b_dn, c_up))
pair_swapped = elementary(Statistics.FERMION, (b_dn, a_dn, c_up))
print("fermionic product norm:", norm(pair))
print("overlap after one swap:", inner(pair, pair_swapped).real,
      "(the exchange sign)")
