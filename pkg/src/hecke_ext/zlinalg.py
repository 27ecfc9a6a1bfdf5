"""Integer lattices, finitely generated abelian groups acting through finite
quotients, first cohomology of abelian groups and fixed subspaces."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from . import fmatrix as fm
from .errors import ParameterError
from .field import FiniteField

# -- Smith and Hermite normal forms ------------------------------------------


def _ident(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Return (U, S, V) with U*A*V = S diagonal, d_i | d_{i+1}, U, V unimodular."""
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, row)) for row in A]
    U = _ident(m)
    V = _ident(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in S:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(t, i, -q)
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(t, j, -q)
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility of the rest of the block
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if S[i][j] % S[t][t]:
                            add_row(i, t, 1)
                            done = False
                            break
                    if not done:
                        break
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V


def hermite_rows(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Row-style Hermite normal form basis of the lattice spanned by ``rows``."""
    M = [list(map(int, r)) for r in rows if any(r)]
    out = []
    col = 0
    while M and col < n:
        nz = [r for r in M if r[col]]
        rest = [r for r in M if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        M = rest
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        c = next(j for j, a in enumerate(row) if a)
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def _pivot(row):
    return next(j for j, a in enumerate(row) if a)


def reduce_mod_lattice(v: Sequence[int], hnf: list[list[int]]) -> tuple[int, ...]:
    """Canonical representative of v modulo the lattice with Hermite basis ``hnf``."""
    v = list(v)
    for row in hnf:
        c = _pivot(row)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def lattice_coordinates(v: Sequence[int], basis: list[list[int]]) -> list[int]:
    """Integer c with c * basis = v for a full-rank echelon basis; raise if v is not in it."""
    n = len(v)
    rem = [Fraction(a) for a in v]
    coords = [0] * len(basis)
    for i, row in enumerate(basis):
        c = _pivot(row)
        q = rem[c] / row[c]
        if q.denominator != 1:
            raise ParameterError("vector is not in the lattice")
        coords[i] = int(q)
        rem = [a - q * b for a, b in zip(rem, row)]
    if any(rem[j] for j in range(n)):
        raise ParameterError("vector is not in the lattice")
    return coords


def int_det(M) -> int:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(det)


def int_inverse(M) -> list[list[int]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c])
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    out = [[x for x in row[n:]] for row in A]
    if any(x.denominator != 1 for row in out for x in row):
        raise ParameterError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


# -- finitely generated abelian groups ----------------------------------------


@dataclass(frozen=True)
class FgAbelianGroup:
    """Abelian group generated by commuting generators of the given orders (0 = infinite).

    Subgroups returned by :func:`stabilizer_and_cosets` list torsion generators
    first, with invariant factors d_1 | d_2 | ..., followed by free generators.
    """

    orders: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if any(o < 0 or o == 1 for o in self.orders):
            raise ParameterError(f"invalid generator orders {self.orders}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(len(self.orders))))
        if len(self.labels) != len(self.orders):
            raise ParameterError("one label per generator required")

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int], labels=()) -> "FgAbelianGroup":
        return cls(tuple(torsion) + (0,) * rank, tuple(labels))

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(o for o in self.orders if o)

    def is_invariant_form(self) -> bool:
        tors = [o for o in self.orders if o]
        seen_free = False
        for o in self.orders:
            if o == 0:
                seen_free = True
            elif seen_free:
                return False
        return all(b % a == 0 for a, b in zip(tors, tors[1:]))

    def reduce(self, e: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % o if o else x for x, o in zip(e, self.orders))

    def unit(self, j: int) -> tuple[int, ...]:
        return tuple(int(i == j) for i in range(self.ngens))

    def relation_rows(self) -> list[list[int]]:
        return [[o if i == j else 0 for i in range(self.ngens)] for j, o in enumerate(self.orders) if o]

    def word(self, e: Sequence[int]) -> str:
        parts = []
        for lab, x in zip(self.labels, e):
            if x == 1:
                parts.append(lab)
            elif x:
                parts.append(f"{lab}^{x}")
        return "*".join(parts) if parts else "1"

    def parse_word(self, text: str) -> tuple[int, ...]:
        e = [0] * self.ngens
        text = text.strip()
        if text in ("", "1", "e"):
            return tuple(e)
        for part in text.split("*"):
            part = part.strip()
            if "^" in part:
                lab, exp = part.split("^", 1)
                exp = int(exp)
            else:
                lab, exp = part, 1
            if lab not in self.labels:
                raise ParameterError(f"unknown generator {lab!r} in word {text!r}")
            e[self.labels.index(lab)] += exp
        return self.reduce(e)


@dataclass
class FiniteActionHom:
    """An action of an FgAbelianGroup on a finite set.

    ``images`` maps each generator index to a dict point -> point, or
    ``act(point, generator_index)`` computes images lazily; ``target_set``
    (optional) is used for membership checks.
    """

    source: FgAbelianGroup
    images: list[dict] | None = None
    act: Callable[[Hashable, int], Hashable] | None = None
    target_set: frozenset | None = None

    def __post_init__(self):
        if self.act is None:
            if self.images is None:
                raise ParameterError("either images or act must be given")
            if self.target_set is None:
                self.target_set = frozenset(self.images[0]) if self.images else frozenset()
            imgs = self.images
            self.act = lambda x, j: imgs[j][x]

    def apply(self, x, e: Sequence[int]):
        for j, k in enumerate(e):
            o = self.source.orders[j]
            if k < 0:
                if o == 0:
                    raise ParameterError("negative powers of free generators need an orbit")
                k %= o
            for _ in range(k):
                x = self.act(x, j)
        return x


@dataclass
class Stabilizer:
    """Result of :func:`stabilizer_and_cosets`.

    ``group`` is the stabilizer in invariant-factor form, ``gen_words`` its
    generators as exponent vectors over the ambient generators and
    ``coset_words`` representatives of ambient / (Stab x . Stab y).
    """

    ambient: FgAbelianGroup
    group: FgAbelianGroup
    gen_words: list[tuple[int, ...]]
    coset_words: list[tuple[int, ...]]
    orbit_words: dict = field(repr=False, default_factory=dict)
    lattice: list[list[int]] = field(repr=False, default_factory=list)
    _coord: list[list[int]] = field(repr=False, default_factory=list)

    def contains(self, e: Sequence[int]) -> bool:
        return not any(reduce_mod_lattice(e, self.lattice))

    def decompose(self, e: Sequence[int]) -> tuple[int, ...]:
        """Exponents a with e = sum a_k gen_words[k] modulo ambient relations."""
        c = lattice_coordinates(list(e), self.lattice)
        raw = [sum(ci * row[k] for ci, row in zip(c, self._coord)) for k in range(len(self._coord[0]))] if self._coord else []
        return self.group.reduce(raw)


def _orbit(G: FgAbelianGroup, act, start):
    words = {start: (0,) * G.ngens}
    queue = deque([start])
    schreier = []
    while queue:
        pt = queue.popleft()
        w = words[pt]
        for j in range(G.ngens):
            nxt = act(pt, j)
            nw = list(w)
            nw[j] += 1
            if nxt in words:
                d = [a - b for a, b in zip(nw, words[nxt])]
                if any(d):
                    schreier.append(d)
            else:
                words[nxt] = G.reduce(nw)
                queue.append(nxt)
    return words, schreier


def _present(G: FgAbelianGroup, hnf: list[list[int]]):
    """Invariant-factor presentation of L/R for L (full rank) containing the relations R."""
    n = G.ngens
    if n == 0:
        return FgAbelianGroup(()), [], []
    rel = [lattice_coordinates(r, hnf) for r in G.relation_rows()]
    if not rel:
        rel = [[0] * n]
    U, S, V = smith_normal_form(rel)
    Vinv = int_inverse(V)
    diag = [S[i][i] if i < len(S) else 0 for i in range(n)]
    keep = [k for k in range(n) if diag[k] != 1]
    tors = sorted((k for k in keep if diag[k]), key=lambda k: diag[k])
    free = [k for k in keep if diag[k] == 0]
    order = tors + free
    words = []
    for k in order:
        coeff = Vinv[k]
        w = [sum(coeff[i] * hnf[i][j] for i in range(n)) for j in range(n)]
        words.append(G.reduce(w))
    labels = tuple(f"h{i}" for i in range(len(order)))
    group = FgAbelianGroup(tuple(diag[k] for k in order), labels)
    coord = [[V[i][k] for k in order] for i in range(n)]
    return group, words, coord


def _stab_lattice(G, act, start):
    words, schreier = _orbit(G, act, start)
    rows = schreier + G.relation_rows()
    hnf = hermite_rows(rows, G.ngens)
    if len(hnf) != G.ngens:
        raise ParameterError("action does not factor through a finite quotient")
    return words, hnf


def stabilizer_and_cosets(G: FgAbelianGroup, act: FiniteActionHom, x, y=None) -> Stabilizer:
    """Stab_G(x) (or Stab_G(x) n Stab_G(y)) with generator words and coset words."""
    if act.target_set is not None:
        for pt in (x,) if y is None else (x, y):
            if pt not in act.target_set:
                raise ParameterError(f"point {pt!r} is not in the target set")
    f = act.act
    if y is None:
        words, hnf = _stab_lattice(G, f, x)
        group, gen_words, coord = _present(G, hnf)
        cosets = list(words.values())
        return Stabilizer(G, group, gen_words, cosets, words, hnf, coord)
    pair_words, hnf = _stab_lattice(G, lambda pt, j: (f(pt[0], j), f(pt[1], j)), (x, y))
    group, gen_words, coord = _present(G, hnf)
    _, hx = _stab_lattice(G, f, x)
    _, hy = _stab_lattice(G, f, y)
    K = hermite_rows(hx + hy, G.ngens)
    cosets = _enumerate_quotient(G, K)
    return Stabilizer(G, group, gen_words, cosets, pair_words, hnf, coord)


def _enumerate_quotient(G: FgAbelianGroup, K: list[list[int]]) -> list[tuple[int, ...]]:
    zero = (0,) * G.ngens
    seen = {reduce_mod_lattice(zero, K): zero}
    queue = deque([zero])
    while queue:
        w = queue.popleft()
        for j in range(G.ngens):
            nw = list(w)
            nw[j] += 1
            key = reduce_mod_lattice(nw, K)
            if key not in seen:
                seen[key] = G.reduce(nw)
                queue.append(seen[key])
    return list(seen.values())


# -- cohomology and invariants --------------------------------------------------


def _check_square(mats, n):
    for M in mats:
        if len(M) != n or any(len(r) != n for r in M):
            raise ParameterError("matrices must be square of equal size")


def h1_abelian(G: FgAbelianGroup, mats, F: FiniteField, dim: int | None = None) -> int:
    """dim H^1(G, M) for the right module M = F^dim with generator j acting by mats[j]."""
    if len(mats) != G.ngens:
        raise ParameterError("one matrix per generator required")
    if dim is None:
        if not mats:
            raise ParameterError("dimension needed when G has no generators")
        dim = len(mats[0])
    _check_square(mats, dim)
    n = G.ngens
    I = fm.identity(dim)
    for i in range(n):
        for j in range(i + 1, n):
            if not fm.mat_eq(fm.mat_mul(F, mats[i], mats[j]), fm.mat_mul(F, mats[j], mats[i])):
                raise ParameterError(f"generators {i} and {j} act by non-commuting matrices")
    for j, o in enumerate(G.orders):
        if o and not fm.mat_eq(fm.mat_pow(F, mats[j], o), I):
            raise ParameterError(f"generator {j} does not satisfy its order relation {o}")
    minus = [fm.mat_sub(F, M, I) for M in mats]
    N = n * dim
    eqs = []
    for i in range(n):
        for j in range(i + 1, n):
            # c_i (R_j - I) - c_j (R_i - I) = 0
            for b in range(dim):
                row = [0] * N
                for a in range(dim):
                    row[i * dim + a] = minus[j][a][b]
                    row[j * dim + a] = F.neg(minus[i][a][b])
                eqs.append(row)
    for j, o in enumerate(G.orders):
        if o:
            norm = fm.zeros(dim, dim)
            P = I
            for _ in range(o):
                norm = fm.mat_add(F, norm, P)
                P = fm.mat_mul(F, P, mats[j])
            for b in range(dim):
                row = [0] * N
                for a in range(dim):
                    row[j * dim + a] = norm[a][b]
                eqs.append(row)
    z1 = N - fm.rank(F, eqs)
    b1 = fm.rank(F, [[x for M in minus for x in M[a]] for a in range(dim)]) if n else 0
    return z1 - b1


def invariant_subspace_dim(mats, F: FiniteField, dim: int | None = None) -> int:
    """dim {v : v M = v for every M in mats}."""
    if dim is None:
        if not mats:
            raise ParameterError("dimension needed for an empty family")
        dim = len(mats[0])
    _check_square(mats, dim)
    if not mats:
        return dim
    I = fm.identity(dim)
    minus = [fm.mat_sub(F, M, I) for M in mats]
    return dim - fm.rank(F, [[x for M in minus for x in M[a]] for a in range(dim)])
