"""Invariant symmetric bilinear forms and the restriction map Ψ.

Invariance under the identity component H⁰ is imposed infinitesimally
(ad-invariance under a basis of h); invariance under the component group is
imposed through the finitely many generator matrices.  Forms on a carrier
subspace V ⊆ h are represented as symmetric dim(V) × dim(V) Fraction
matrices in the carrier's basis, flattened to coordinates indexed by pairs
(i, j) with i ≤ j in lexicographic order.
"""

from fractions import Fraction
from math import gcd

import numpy as np

from .liealg import is_bracket_closed
from .linalg import (F0, F1, Subspace, feye, fzeros, intersect_kernels,
                     kernel_basis, rank, solve_in_span)


def sym_pairs(m):
    """Index pairs (i, j), i <= j, of a symmetric m x m matrix, lex order."""
    return [(i, j) for i in range(m) for j in range(i, m)]


def sym_coords(form, pairs):
    """Flatten a symmetric matrix to its upper-triangle coordinates."""
    out = fzeros(len(pairs))
    for idx, (i, j) in enumerate(pairs):
        out[idx] = form[i, j]
    return out


def sym_matrix(vec, m, pairs):
    """Inverse of sym_coords."""
    out = fzeros(m, m)
    for idx, (i, j) in enumerate(pairs):
        out[i, j] = vec[idx]
        out[j, i] = vec[idx]
    return out


def vee(alpha, beta):
    """Symmetric product of two covectors: (α∨β)(x, y) = α(x)β(y) + α(y)β(x)."""
    return np.outer(alpha, beta) + np.outer(beta, alpha)


class InvariantFormSpace:
    """Invariant symmetric forms on a carrier, optionally with the Ψ data.

    form_basis spans the H-invariant forms on the carrier.  When produced by
    psi_analysis, psi_matrix holds the coordinates of the restricted forms
    B̃₁,…,B̃_r in form_basis, and rank_psi/dim_N/dim_C are the rank, kernel
    dimension and cokernel dimension of that matrix.
    """

    def __init__(self, carrier, form_basis, psi_matrix=None,
                 rank_psi=None, dim_N=None, dim_C=None):
        self.carrier = carrier
        self.form_basis = form_basis
        self.psi_matrix = psi_matrix
        self.rank_psi = rank_psi
        self.dim_N = dim_N
        self.dim_C = dim_C

    @property
    def dim(self):
        return len(self.form_basis)


def fixed_vectors(space, actions):
    """{v ∈ space : γ v = v for every action γ}; space itself if no actions.

    Raises ValueError if some action does not map the space into itself.
    """
    if not actions:
        return space
    B = space.basis
    m = space.dim
    ops = []
    for g in actions:
        moved = g.dot(B)
        for j in range(m):
            if solve_in_span(B, moved[:, j]) is None:
                raise ValueError("action does not preserve the subspace")
        ops.append(moved - B)
    coords = intersect_kernels(ops, m)
    return Subspace(space.ambient_dim, B.dot(coords.basis))


def restricted_operator(carrier, vectors):
    """Coordinates of the given ambient vectors in the carrier basis.

    Returns the dim(carrier) x len(vectors) coefficient matrix; raises
    ValueError if a vector lies outside the carrier.
    """
    m = carrier.dim
    out = fzeros(m, len(vectors))
    for j, v in enumerate(vectors):
        coords = solve_in_span(carrier.basis, v)
        if coords is None:
            raise ValueError("vector escapes the carrier subspace")
        out[:, j] = coords
    return out


def _ad_constraint(R, m, pairs):
    """Matrix of F ↦ RᵀF + FR on symmetric coordinates (ad-invariance)."""
    M = len(pairs)
    op = fzeros(M, M)
    for col, (i, j) in enumerate(pairs):
        L = fzeros(m, m)
        if i < j:
            for p in range(m):
                ri, rj = R[i, p], R[j, p]
                if ri:
                    L[p, j] += ri
                    L[j, p] += ri
                if rj:
                    L[p, i] += rj
                    L[i, p] += rj
        else:
            for p in range(m):
                ri = R[i, p]
                if ri:
                    L[p, i] += ri
                    L[i, p] += ri
        for row, (a, b) in enumerate(pairs):
            if L[a, b]:
                op[row, col] = L[a, b]
    return op


def _generator_constraint(C, m, pairs):
    """Matrix of F ↦ CᵀFC − F on symmetric coordinates (γ-invariance)."""
    M = len(pairs)
    op = fzeros(M, M)
    for col, (i, j) in enumerate(pairs):
        for row, (a, b) in enumerate(pairs):
            if i < j:
                val = C[i, a] * C[j, b] + C[j, a] * C[i, b]
            else:
                val = C[i, a] * C[i, b]
            if (a, b) == (i, j):
                val = val - 1
            if val:
                op[row, col] = val
    return op


def invariant_sym_forms(pair, carrier):
    """H-invariant symmetric bilinear forms on a carrier subspace of h.

    The carrier must be stable under bracketing with h and under the
    generators (the uses here: h, h∩[g,g], z(h)).
    """
    alg = pair.algebra
    m = carrier.dim
    pairs = sym_pairs(m)
    ops = []
    for t in range(pair.h.dim):
        x = pair.h_basis[:, t]
        brackets = [alg.bracket(x, carrier.basis[:, j]) for j in range(m)]
        R = restricted_operator(carrier, brackets)
        ops.append(_ad_constraint(R, m, pairs))
    for g in pair.generators:
        images = [g.dot(carrier.basis[:, j]) for j in range(m)]
        C = restricted_operator(carrier, images)
        ops.append(_generator_constraint(C, m, pairs))
    coords = intersect_kernels(ops, len(pairs))
    forms = [sym_matrix(coords.basis[:, j], m, pairs) for j in range(coords.dim)]
    return InvariantFormSpace(carrier, forms)


def psi_analysis(pair, dec=None):
    """Restriction of the per-factor forms B̃ᵢ to h∩[g,g], in invariant terms.

    Returns an InvariantFormSpace on h∩[g,g] whose psi_matrix column i is
    the coordinate vector of B̃ᵢ|_{(h∩[g,g])²} in form_basis; dim_N and
    dim_C are the kernel and cokernel dimensions of that matrix.
    """
    from .pairs import decompose
    if dec is None:
        dec = decompose(pair)
    carrier = dec.hcapgg
    space = invariant_sym_forms(pair, carrier)
    m = carrier.dim
    pairs = sym_pairs(m)
    if space.form_basis:
        stack = fzeros(len(pairs), space.dim)
        for j, form in enumerate(space.form_basis):
            stack[:, j] = sym_coords(form, pairs)
    else:
        stack = fzeros(len(pairs), 0)
    r = pair.algebra.r
    psi = fzeros(space.dim, r)
    B = carrier.basis
    for i in range(r):
        restricted = B.T.dot(pair.algebra.btilde(i)).dot(B)
        coords = solve_in_span(stack, sym_coords(restricted, pairs))
        if coords is None:
            raise RuntimeError("restricted factor form escapes the invariant "
                               "space; pair validation must have been skipped")
        psi[:, i] = coords
    rank_psi = rank(psi)
    space.psi_matrix = psi
    space.rank_psi = rank_psi
    space.dim_N = r - rank_psi
    space.dim_C = space.dim - rank_psi
    return space


def minimal_ideal_count(pair, s):
    """Number of generator orbits on the simple ideals of a semisimple s.

    Diagnostic only.  The ideal count is the dimension of the commutant of
    ad(s) acting on s; with generators present the ideals themselves are
    recovered by splitting a generic commutant element into rational
    eigenspaces, which can fail over Q ("splitting failed").
    """
    alg = pair.algebra
    if not is_bracket_closed(alg, s):
        raise ValueError("not a subalgebra")
    m = s.dim
    if m == 0:
        return 0
    ads = []
    for i in range(m):
        brackets = [alg.bracket(s.basis[:, i], s.basis[:, j]) for j in range(m)]
        ads.append(restricted_operator(s, brackets))
    killing = fzeros(m, m)
    supports = [list(zip(*np.nonzero(R))) for R in ads]
    for i in range(m):
        for j in range(i, m):
            acc = F0
            other = ads[j]
            for t, u in supports[i]:
                if other[u, t]:
                    acc += ads[i][t, u] * other[u, t]
            killing[i, j] = killing[j, i] = acc
    if rank(killing) != m:
        raise ValueError("subspace is not semisimple (degenerate Killing form)")

    # commutant of the restricted adjoint action: P with PR = RP for all R,
    # P[a,b] vectorized row-major at index a*m + b
    ops = []
    for R in ads:
        op = fzeros(m * m, m * m)
        for a in range(m):
            for b in range(m):
                col = a * m + b
                for t in range(m):
                    if R[b, t]:
                        op[a * m + t, col] += R[b, t]
                    if R[t, a]:
                        op[t * m + b, col] -= R[t, a]
        ops.append(op)
    comm = intersect_kernels(ops, m * m)
    k = comm.dim
    if not pair.generators:
        return k
    if k == 1:
        return 1

    ideals = _split_commutant(comm, m, k)
    reps = list(range(k))

    def find(x):
        while reps[x] != x:
            reps[x] = reps[reps[x]]
            x = reps[x]
        return x

    for g in pair.generators:
        images = [g.dot(s.basis[:, j]) for j in range(m)]
        C = restricted_operator(s, images)
        for i, ideal in enumerate(ideals):
            image = Subspace.span(m, [C.dot(ideal.basis[:, j])
                                      for j in range(ideal.dim)])
            target = next((j for j, other in enumerate(ideals) if other == image), None)
            if target is None:
                raise RuntimeError("generator does not permute the simple ideals")
            ri, rj = find(i), find(target)
            if ri != rj:
                reps[ri] = rj
    return len({find(i) for i in range(k)})


def _split_commutant(comm, m, k):
    """Simple ideals as rational eigenspaces of a generic commutant element."""
    mats = [comm.basis[:, j].reshape(m, m) for j in range(comm.dim)]
    eye = feye(m)
    for attempt in range(1, 4):
        T = fzeros(m, m)
        for j, P in enumerate(mats):
            T = T + Fraction((j + 1) ** attempt) * P
        roots = _rational_eigenvalues(T, k)
        if roots is None:
            continue
        ideals = [kernel_basis(T - lam * eye) for lam in roots]
        if all(i.dim for i in ideals) and sum(i.dim for i in ideals) == m:
            return ideals
    raise ValueError("splitting failed: no generic commutant element with "
                     "distinct rational eigenvalues")


def _rational_eigenvalues(T, k):
    """k distinct rational eigenvalues of T, or None if there aren't exactly k.

    A generic commutant element is scalar on each simple ideal with all
    scalars distinct, so it is annihilated by a degree-k polynomial whose
    roots are those scalars.
    """
    m = T.shape[0]
    powers = [feye(m)]
    for _ in range(k):
        powers.append(T.dot(powers[-1]))
    flat = fzeros(m * m, k)
    for j in range(k):
        flat[:, j] = powers[j].reshape(m * m)
    coeffs = solve_in_span(flat, powers[k].reshape(m * m))
    if coeffs is None:
        return None
    # T satisfies x^k - sum coeffs[j] x^j; need k distinct rational roots
    poly = [-c for c in coeffs] + [F1]
    roots = sorted(set(_rational_roots(poly)))
    if len(roots) != k:
        return None
    return roots


def _rational_roots(poly):
    """All rational roots of a polynomial with Fraction coefficients."""
    den = 1
    for c in poly:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in poly]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    shift = 0
    while ints[shift] == 0:
        shift += 1
    roots = [Fraction(0)] if shift else []
    lead, const = ints[-1], ints[shift]

    def divisors(v):
        v = abs(v)
        out = []
        d = 1
        while d * d <= v:
            if v % d == 0:
                out.append(d)
                out.append(v // d)
            d += 1
        return out

    seen = set()
    for p in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0:
                    roots.append(cand)
    return roots
