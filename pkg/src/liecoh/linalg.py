"""Exact rational linear algebra on numpy object arrays of Fractions.

Matrices here are dense 2-D numpy arrays with dtype=object whose entries are
fractions.Fraction.  Rank/kernel elimination is fraction-free: each row is
cleared to integers once (lcm of denominators), then eliminated with the
gcd-scaled two-term update, so no rationals appear inside the hot loop.

Ordering conventions used throughout the package: symmetric index pairs are
(i, j) with i <= j in lexicographic order, exterior tuples are strictly
increasing tuples in lexicographic order (itertools.combinations order).
"""

from fractions import Fraction
from math import gcd
import logging

import numpy as np

log = logging.getLogger(__name__)

F0 = Fraction(0)
F1 = Fraction(1)


def fr(x):
    """Fraction from an int, a Fraction, or a string "p" / "p/q"."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not an exact rational: %r" % (x,))


def rat_str(q):
    """Serialize a rational as "p" (denominator 1) or "p/q"."""
    q = fr(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def fmat(rows):
    """2-D object array of Fractions from a nested list (or array)."""
    arr = np.array([[fr(x) for x in row] for row in rows], dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(len(rows), -1)
    return arr


def fvec(entries):
    return np.array([fr(x) for x in entries], dtype=object)


def fzeros(r, c=None):
    if c is None:
        a = np.empty(r, dtype=object)
        a[:] = F0
        return a
    a = np.empty((r, c), dtype=object)
    a[:, :] = F0
    return a


def feye(n):
    a = fzeros(n, n)
    for i in range(n):
        a[i, i] = F1
    return a


def is_zero(arr):
    return all(x == 0 for x in np.asarray(arr).flat)


# ---------------------------------------------------------------------------
# fraction-free elimination core
# ---------------------------------------------------------------------------

def _int_rows(m):
    """Clear each row of a Fraction matrix to coprime integers (rank-safe)."""
    out = []
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _echelon_int(rows, ncols):
    """In-place integer row echelon; returns (nonzero rows, pivot columns).

    Elimination uses the gcd-scaled two-term update
        row_i <- (piv//g)*row_i - (lead//g)*row_r
    followed by a gcd renormalization of row_i, which keeps entries small
    without any exact-division bookkeeping.
    """
    nrows = len(rows)
    r = 0
    pivots = []
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            lead = rows[i][c]
            if lead:
                g = gcd(piv, lead)
                a, b = piv // g, lead // g
                ri, rr = rows[i], rows[r]
                new = [a * ri[j] - b * rr[j] for j in range(ncols)]
                g2 = 0
                for v in new:
                    g2 = gcd(g2, v)
                if g2 > 1:
                    new = [v // g2 for v in new]
                rows[i] = new
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rank(m):
    """Exact rank over the rationals (fraction-free elimination)."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    rows, ncols = m.shape
    _, pivots = _echelon_int(_int_rows(m), ncols)
    return len(pivots)


def rank_modp(m, p):
    """Rank of the same matrix over F_p; always <= the rational rank.

    Raises ValueError if some denominator vanishes mod p (pick another prime).
    """
    m = np.asarray(m)
    if m.size == 0:
        return 0
    nrows, ncols = m.shape
    rows = []
    for row in m:
        r = []
        for x in row:
            if x.denominator % p == 0:
                raise ValueError("denominator divisible by modulus")
            r.append(x.numerator * pow(x.denominator, -1, p) % p)
        rows.append(r)
    rk = 0
    for c in range(ncols):
        pr = None
        for i in range(rk, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[rk], rows[pr] = rows[pr], rows[rk]
        inv = pow(rows[rk][c], -1, p)
        rows[rk] = [v * inv % p for v in rows[rk]]
        for i in range(rk + 1, nrows):
            f = rows[i][c]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rk])]
        rk += 1
        if rk == nrows:
            break
    return rk


def rank_checked(m, p):
    """Rational rank, with the mod-p fast path logged when it disagrees."""
    rq = rank(m)
    rp = rank_modp(m, p)
    if rp != rq:
        log.warning("modular rank %d < rational rank %d (p=%d); rational wins",
                    rp, rq, p)
    return rq


def _is_probable_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime_over_2_30(rng):
    """A random prime > 2**30 drawn from the supplied random.Random."""
    while True:
        cand = rng.randrange(2 ** 30 + 1, 2 ** 31) | 1
        if _is_probable_prime(cand):
            return cand


def _int_rows_sparse(m):
    """Sparse variant of _int_rows: one {col: int} dict per nonzero row."""
    out = []
    for row in m:
        nz = [(j, x) for j, x in enumerate(row) if x]
        if not nz:
            continue
        den = 1
        for _, x in nz:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = {j: int(x * den) for j, x in nz}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {j: v // g for j, v in ints.items()}
        out.append(ints)
    return out


def _sparse_echelon(rows, ncols):
    """Integer row echelon on sparse rows; returns (pivot rows, pivot columns).

    rows is a list of {col: int} dicts, consumed destructively.  The update
    is the same gcd-scaled two-term combination as _echelon_int, but a
    column -> live rows index means each pivot only touches the rows that
    actually contain the pivot column, so cost tracks the nonzero structure.
    """
    by_col = {}
    for idx, r in enumerate(rows):
        for c in r:
            by_col.setdefault(c, set()).add(idx)
    used = [False] * len(rows)
    out_rows = []
    pivots = []
    for c in range(ncols):
        holders = by_col.get(c)
        if not holders:
            continue
        cand = [i for i in holders if not used[i]]
        if not cand:
            continue
        pr = min(cand, key=lambda i: (len(rows[i]), abs(rows[i][c])))
        used[pr] = True
        prow = rows[pr]
        piv = prow[c]
        for i in cand:
            if i == pr:
                continue
            r = rows[i]
            lead = r[c]
            g = gcd(piv, lead)
            a, b = piv // g, lead // g
            new = {}
            g2 = 0
            for col, v in r.items():
                w = a * v - b * prow.get(col, 0)
                if w:
                    new[col] = w
                    g2 = gcd(g2, w)
            for col, v in prow.items():
                if col not in r:
                    w = -b * v
                    new[col] = w
                    g2 = gcd(g2, w)
            if g2 > 1:
                new = {col: v // g2 for col, v in new.items()}
            for col in r:
                if col not in new:
                    by_col[col].discard(i)
            for col in new:
                if col not in r:
                    by_col.setdefault(col, set()).add(i)
            rows[i] = new
        out_rows.append(prow)
        pivots.append(c)
    return out_rows, pivots


def kernel_basis(m):
    """Subspace {v : m v = 0} of the column/domain space of m."""
    m = np.asarray(m)
    nrows, ncols = (m.shape if m.size else (m.shape[0], m.shape[1]))
    if ncols == 0:
        return Subspace(0, fzeros(0, 0))
    if nrows == 0:
        return Subspace(ncols, feye(ncols))
    rows, pivots = _sparse_echelon(_int_rows_sparse(m), ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = fzeros(ncols, len(free))
    for col_idx, f in enumerate(free):
        v = {f: F1}
        # back-substitution over the sparse integer echelon rows
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = rows[i]
            s = F0
            for j, val in row.items():
                if j != pc:
                    vj = v.get(j)
                    if vj is not None:
                        s += val * vj
            if s:
                v[pc] = -s / row[pc]
        for j, val in v.items():
            if val:
                basis[j, col_idx] = val
    return Subspace(ncols, basis, check=False)


# ---------------------------------------------------------------------------
# rational RREF: canonical forms, solving, inversion
# ---------------------------------------------------------------------------

def _rref(rows, ncols):
    """Reduced row echelon form over Q, in place; returns (rows, pivots)."""
    r = 0
    pivots = []
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m):
    """RREF of a Fraction matrix as (matrix, pivot column list)."""
    m = np.asarray(m)
    rows = [[fr(x) for x in row] for row in m]
    rows, pivots = _rref(rows, m.shape[1])
    out = fzeros(m.shape[0], m.shape[1])
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out, pivots


def solve_in_span(basis, v):
    """Coordinates x with basis.dot(x) == v, or None if v is outside the span.

    basis: n x k matrix whose columns span the target; v: length-n vector.
    """
    basis = np.asarray(basis)
    n, k = basis.shape
    aug = [[fr(basis[i, j]) for j in range(k)] + [fr(v[i])] for i in range(n)]
    rows, pivots = _rref(aug, k + 1)
    if k in pivots:
        return None
    x = fzeros(k)
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][k]
    return x


def solve_many(basis, rhs):
    """Coordinates X with basis.dot(X) == rhs, or None if a column escapes.

    One elimination for all right-hand sides; basis is n x k, rhs is n x d.
    """
    basis = np.asarray(basis)
    rhs = np.asarray(rhs)
    k = basis.shape[1]
    d = rhs.shape[1]
    if d == 0:
        return fzeros(k, 0)
    if k == 0:
        return fzeros(0, d) if is_zero(rhs) else None
    reduced, pivots = rref(np.hstack([basis, rhs]))
    if any(p >= k for p in pivots):
        return None
    coords = fzeros(k, d)
    for i, p in enumerate(pivots):
        coords[p] = reduced[i, k:]
    return coords


def inverse(m):
    """Exact inverse of a square Fraction matrix (ValueError if singular)."""
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = [[fr(m[i, j]) for j in range(n)] + [F1 if i == j else F0 for j in range(n)]
           for i in range(n)]
    rows, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    out = fzeros(n, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = rows[i][n + j]
    return out


def is_spd(gram):
    """True iff gram is symmetric positive definite (exact pivot test)."""
    gram = np.asarray(gram)
    n = gram.shape[0]
    if gram.shape != (n, n):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i, j] != gram[j, i]:
                return False
    # symmetric Gaussian elimination: all pivots positive <=> SPD
    a = [[fr(gram[i, j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return True


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A linear subspace of Q^n, held as an n x k basis matrix (columns).

    Two subspaces compare equal iff their reduced-column-echelon canonical
    forms are identical; canonicalization is idempotent.
    """

    def __init__(self, ambient_dim, basis, check=True):
        basis = np.asarray(basis)
        if basis.shape[0] != ambient_dim:
            raise ValueError("basis rows != ambient dimension")
        if check and basis.shape[1] and rank(basis) != basis.shape[1]:
            raise ValueError("basis columns are dependent")
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._canonical = None

    @classmethod
    def span(cls, ambient_dim, vectors):
        """Subspace spanned by the given vectors (dependencies allowed)."""
        vecs = [fvec(v) for v in vectors]
        if not vecs:
            return cls(ambient_dim, fzeros(ambient_dim, 0))
        red, pivots = rref([list(v) for v in vecs])
        cols = fzeros(ambient_dim, len(pivots))
        for i in range(len(pivots)):
            for j in range(ambient_dim):
                cols[j, i] = red[i, j]
        return cls(ambient_dim, cols)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def canonical(self):
        """Reduced-column-echelon basis (unique per subspace)."""
        if self._canonical is None:
            if self.dim == 0:
                self._canonical = self.basis
            else:
                red, pivots = rref(self.basis.T)
                out = fzeros(self.ambient_dim, len(pivots))
                for i in range(len(pivots)):
                    for j in range(self.ambient_dim):
                        out[j, i] = red[i, j]
                self._canonical = out
        return self._canonical

    def contains(self, v):
        return solve_in_span(self.basis, v) is not None if self.dim else is_zero(v)

    def contains_subspace(self, other):
        return all(self.contains(other.basis[:, j]) for j in range(other.dim))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.dim == other.dim
                and bool(np.array_equal(self.canonical, other.canonical)))

    def __hash__(self):
        return hash((self.ambient_dim, self.dim,
                     tuple(x for x in self.canonical.flat)))

    def __repr__(self):
        return "Subspace(dim=%d in Q^%d)" % (self.dim, self.ambient_dim)


def zero_subspace(n):
    return Subspace(n, fzeros(n, 0))


def full_subspace(n):
    return Subspace(n, feye(n))


def intersect(s1, s2):
    """Intersection of two subspaces of the same ambient space."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if s1.dim == 0 or s2.dim == 0:
        return zero_subspace(s1.ambient_dim)
    stacked = np.hstack([s1.basis, -s2.basis])
    ker = kernel_basis(stacked)
    vecs = [s1.basis.dot(ker.basis[:s1.dim, j]) for j in range(ker.dim)]
    return Subspace.span(s1.ambient_dim, vecs)


def subspace_sum(s1, s2):
    """Sum s1 + s2 of two subspaces of the same ambient space."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    vecs = [s1.basis[:, j] for j in range(s1.dim)]
    vecs += [s2.basis[:, j] for j in range(s2.dim)]
    return Subspace.span(s1.ambient_dim, vecs)


def _dot_via_nonzero(a, b):
    """a.dot(b) for object matrices, driven by the nonzero entries of a."""
    out = fzeros(a.shape[0], b.shape[1])
    nc = b.shape[1]
    for i, k in zip(*np.nonzero(a)):
        v = a[i, k]
        brow = b[k]
        for j in range(nc):
            if brow[j]:
                out[i, j] += v * brow[j]
    return out


def intersect_kernels(operators, dim):
    """Common kernel of a family of operators with dim columns (a Subspace).

    Processes the operators one at a time, restricting each to the kernel
    found so far, so the elimination shrinks quickly instead of one giant
    stacked system; each operator is applied through its nonzero entries
    only, since the constraint matrices built on symmetric or exterior
    coordinates are sparse.
    """
    basis = None  # None stands for the full space (identity restriction)
    for op in operators:
        op = np.asarray(op)
        if basis is None:
            restricted = op
        else:
            if basis.shape[1] == 0:
                break
            d = basis.shape[1]
            restricted = fzeros(op.shape[0], d)
            for row, col in zip(*np.nonzero(op)):
                c = op[row, col]
                brow = basis[col]
                for j in range(d):
                    if brow[j]:
                        restricted[row, j] += c * brow[j]
        ker = kernel_basis(restricted)
        basis = ker.basis if basis is None else _dot_via_nonzero(basis, ker.basis)
    if basis is None:
        return full_subspace(dim)
    return Subspace(dim, basis, check=False)


def orth_complement(s, gram):
    """gram-orthogonal complement of s inside its ambient space.

    gram must be symmetric positive definite, so the complement is a true
    direct complement: s + result = ambient, s ∩ result = 0.
    """
    gram = np.asarray(gram)
    if gram.shape != (s.ambient_dim, s.ambient_dim):
        raise ValueError("gram shape mismatch")
    if not is_spd(gram):
        raise ValueError("gram not symmetric positive definite")
    if s.dim == 0:
        return full_subspace(s.ambient_dim)
    return kernel_basis(s.basis.T.dot(gram))
