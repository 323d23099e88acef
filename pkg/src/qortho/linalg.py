"""Exact sparse matrices over the scalar ring.

Matrices are square, 1-based, and stored as sparse (row, col) -> Scalar
maps holding only nonzero canonical entries.  Composite tensor indices
are row-major: (a, b) -> (a-1)*N + b, so slot 1 is the slow index.
Everything here is immutable in spirit: operations return new matrices.
"""

from fractions import Fraction

from .errors import (
    Degenerate, DimMismatch, NotInvolution, NotReal, NotSymmetric,
    RankDeficient, Singular,
)
from .scalars import GaussRat, Scalar


def pack(parts, width):
    """Composite index (a, b, ...) -> single 1-based index, row-major."""
    idx = 0
    for p in parts:
        idx = idx * width + (p - 1)
    return idx + 1


def unpack(idx, width, arity):
    idx -= 1
    parts = []
    for _ in range(arity):
        parts.append(idx % width + 1)
        idx //= width
    return tuple(reversed(parts))


class SqMat:

    __slots__ = ("dim", "entries")

    def __init__(self, dim, entries=None):
        self.dim = dim
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not isinstance(v, Scalar):
                v = Scalar.from_gauss(v) if isinstance(v, GaussRat) else Scalar.from_frac(v)
            if not v.is_zero():
                self.entries[(r, c)] = v

    @staticmethod
    def identity(dim):
        one = Scalar.one()
        return SqMat(dim, {(i, i): one for i in range(1, dim + 1)})

    @staticmethod
    def diag(values):
        return SqMat(len(values), {(i + 1, i + 1): v for i, v in enumerate(values)})

    def get(self, r, c):
        return self.entries.get((r, c), Scalar.zero())

    def __eq__(self, other):
        if not isinstance(other, SqMat):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, frozenset(self.entries.items())))

    def __add__(self, other):
        if self.dim != other.dim:
            raise DimMismatch(f"{self.dim} vs {other.dim}")
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        m = SqMat.__new__(SqMat)
        m.dim, m.entries = self.dim, out
        return m

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        m = SqMat.__new__(SqMat)
        m.dim = self.dim
        m.entries = {k: -v for k, v in self.entries.items()}
        return m

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if self.dim != other.dim:
            raise DimMismatch(f"{self.dim} vs {other.dim}")
        rows = {}
        for (r, c), v in other.entries.items():
            rows.setdefault(r, []).append((c, v))
        out = {}
        for (i, k), v in self.entries.items():
            for j, w in rows.get(k, ()):
                key = (i, j)
                acc = out.get(key)
                acc = v * w if acc is None else acc + v * w
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
        m = SqMat.__new__(SqMat)
        m.dim, m.entries = self.dim, out
        return m

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if c.is_zero():
            return SqMat(self.dim)
        m = SqMat.__new__(SqMat)
        m.dim = self.dim
        m.entries = {k: c * v for k, v in self.entries.items()}
        return m

    def transpose(self):
        m = SqMat.__new__(SqMat)
        m.dim = self.dim
        m.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return m

    def trace(self):
        t = Scalar.zero()
        for (r, c), v in self.entries.items():
            if r == c:
                t = t + v
        return t

    def is_zero(self):
        return not self.entries

    def is_identity(self):
        return self == SqMat.identity(self.dim)

    def map_entries(self, f):
        return SqMat(self.dim, {k: f(v) for k, v in self.entries.items()})

    def to_json(self):
        rows = [[r, c, str(v)] for (r, c), v in sorted(self.entries.items())]
        return {"dim": self.dim, "entries": rows}

    def __repr__(self):
        return f"<SqMat dim={self.dim} nnz={len(self.entries)}>"


def matmul(A, B):
    return A * B


def bar_mat(A, regime):
    """Entrywise bar conjugation."""
    return A.map_entries(lambda v: v.bar(regime))


def classical_mat(A):
    """Entrywise evaluation at s=1; entries stay Scalar constants."""
    return A.map_entries(lambda v: Scalar.from_gauss(v.classical_limit()))


def kron_embed(A, slot, width, arity):
    """Embed A into the arity-fold tensor space of the given width.

    A of dim `width` acts on tensor slot `slot`; A of dim `width`**2 acts
    on the adjacent pair (slot, slot+1).  Identity on the other slots.
    """
    total = width ** arity
    if A.dim == width:
        span = 1
    elif A.dim == width ** 2:
        span = 2
    else:
        raise DimMismatch(f"dim {A.dim} does not fit width {width}")
    if slot < 1 or slot + span - 1 > arity:
        raise DimMismatch(f"slot {slot} (span {span}) outside arity {arity}")
    rest = [i for i in range(arity) if not (slot - 1 <= i < slot - 1 + span)]
    out = {}
    free = [range(1, width + 1)] * len(rest)
    for (r, c), v in A.entries.items():
        rp = unpack(r, width, span)
        cp = unpack(c, width, span)
        for combo in _product(free):
            row = [0] * arity
            col = [0] * arity
            for i, x in zip(rest, combo):
                row[i] = col[i] = x
            for i, (x, y) in enumerate(zip(rp, cp)):
                row[slot - 1 + i] = x
                col[slot - 1 + i] = y
            out[(pack(row, width), pack(col, width))] = v
    m = SqMat.__new__(SqMat)
    m.dim, m.entries = total, out
    return m


def _product(ranges):
    if not ranges:
        yield ()
        return
    for x in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (x,) + rest


def _dense(A):
    z = Scalar.zero()
    return [[A.entries.get((r, c), z) for c in range(1, A.dim + 1)]
            for r in range(1, A.dim + 1)]


def inverse(A):
    """Exact inverse by Gauss-Jordan elimination over the fraction field."""
    n = A.dim
    M = _dense(A)
    E = _dense(SqMat.identity(n))
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            raise Singular(f"no pivot in column {col + 1}")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            E[col], E[piv] = E[piv], E[col]
        inv = M[col][col].inv()
        M[col] = [x * inv for x in M[col]]
        E[col] = [x * inv for x in E[col]]
        for r in range(n):
            f = M[r][col]
            if r == col or f.is_zero():
                continue
            M[r] = [a - f * b for a, b in zip(M[r], M[col])]
            E[r] = [a - f * b for a, b in zip(E[r], E[col])]
    return SqMat(n, {(r + 1, c + 1): E[r][c]
                     for r in range(n) for c in range(n)})


def rank(A):
    """Rank over the fraction field of the scalar ring."""
    M = [row[:] for row in _dense(A)]
    n = A.dim
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if not M[i][col].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][col].inv()
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and not M[i][col].is_zero():
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def _rational_entry(v):
    g = v.as_gauss()
    if g is None:
        raise NotReal(f"entry {v} is not a constant")
    if g.im != 0:
        raise NotReal(f"entry {v} has an imaginary part")
    return g.re


def signature(S):
    """Signature (p, m) of a symmetric rational matrix by congruence.

    Pivot rule: first nonzero diagonal entry; if every remaining diagonal
    entry is zero, fold the first nonzero off-diagonal pair (i, j) by
    adding row/column j to row/column i, which makes S_ii = 2 S_ij.
    """
    n = S.dim
    for (r, c), v in S.entries.items():
        if S.get(c, r) != v:
            raise NotSymmetric(f"entry ({r},{c})")
    M = [[_rational_entry(S.entries[(r, c)]) if (r, c) in S.entries else Fraction(0)
          for c in range(1, n + 1)] for r in range(1, n + 1)]
    active = list(range(n))
    p = m = 0
    while active:
        k = next((a for a in active if M[a][a] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active
                         if i < j and M[i][j] != 0), None)
            if pair is None:
                raise Degenerate(f"{len(active)} null directions")
            i, j = pair
            for a in range(n):
                M[i][a] += M[j][a]
            for a in range(n):
                M[a][i] += M[a][j]
            continue
        d = M[k][k]
        if d > 0:
            p += 1
        else:
            m += 1
        active.remove(k)
        for i in active:
            f = M[i][k] / d
            if f == 0:
                continue
            for a in range(n):
                M[i][a] -= f * M[k][a]
            for a in range(n):
                M[a][i] -= f * M[a][k]
    return (p, m)


def _gauss_rows(K):
    """Matrix rows as lists of GaussRat; entries must be constants."""
    n = K.dim
    rows = [[GaussRat(0)] * n for _ in range(n)]
    for (r, c), v in K.entries.items():
        g = v.as_gauss()
        if g is None:
            raise NotReal(f"entry {v} is not a constant")
        rows[r - 1][c - 1] = g
    return rows


def antilinear_fixed_basis(K, regime=None):
    """Basis M of the fixed vectors of the antilinear map r -> bar(r)*K.

    Requires K*bar(K) = I so the map is an involution.  Candidate rows
    (e_j + tau(e_j))/2 for all j, then i*(e_j - tau(e_j))/2, scanned in
    order with greedy rank selection over the Gaussian rationals; every
    selected row satisfies bar(row)*K = row and M is invertible.
    """
    n = K.dim
    rows = _gauss_rows(K)
    for i in range(n):
        for j in range(n):
            acc = GaussRat(0)
            for k in range(n):
                acc = acc + rows[i][k] * rows[k][j].conj()
            if acc != GaussRat(1 if i == j else 0):
                raise NotInvolution(f"K*bar(K) differs from I at ({i + 1},{j + 1})")

    def tau(vec):
        out = [GaussRat(0)] * n
        for k, x in enumerate(vec):
            if x.is_zero():
                continue
            xb = x.conj()
            for j, kj in enumerate(rows[k]):
                if not kj.is_zero():
                    out[j] = out[j] + xb * kj
        return out

    half = GaussRat(Fraction(1, 2))
    ihalf = GaussRat(0, Fraction(1, 2))
    candidates = []
    for j in range(n):
        e = [GaussRat(1) if a == j else GaussRat(0) for a in range(n)]
        te = tau(e)
        candidates.append([(x + y) * half for x, y in zip(e, te)])
    for j in range(n):
        e = [GaussRat(1) if a == j else GaussRat(0) for a in range(n)]
        te = tau(e)
        candidates.append([(x - y) * ihalf for x, y in zip(e, te)])

    picked = []
    echelon = []  # reduced rows with pivot positions
    for cand in candidates:
        if len(picked) == n:
            break
        red = cand[:]
        for pivot_col, prow in echelon:
            f = red[pivot_col]
            if not f.is_zero():
                red = [a - f * b for a, b in zip(red, prow)]
        pc = next((i for i, x in enumerate(red) if not x.is_zero()), None)
        if pc is None:
            continue
        inv = red[pc].inv()
        echelon.append((pc, [x * inv for x in red]))
        picked.append(cand)
    if len(picked) < n:
        raise RankDeficient(f"only {len(picked)} independent fixed rows")
    return SqMat(n, {(r + 1, c + 1): Scalar.from_gauss(v)
                     for r, row in enumerate(picked)
                     for c, v in enumerate(row) if not v.is_zero()})
