"""Reflections and minimum-length reflection factorizations.

A reflection is any invertible map fixing a hyperplane pointwise; this
includes the determinant-1 transvections.  Every reflection has the form
I + w*phi for a nonzero linear functional phi (a row vector) and a nonzero
column vector w with 1 + phi(w) != 0, and that parametrization drives the
exhaustive enumeration.

Factorizations are ordered tuples; all counts use ordered semantics.
Enumerations are deterministic: candidate reflections are always tried in
enumerate_reflections order.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceededError
from .ff import FieldSpec
from .matrix import Matrix, Subspace, fixed_space, mul_entries

ENUMERATION_BUDGET = 10**8


def reflection_length(g: Matrix) -> int:
    """Minimum number of reflections multiplying to g: n - dim fix(g)."""
    return g.n - fixed_space(g).dim


def is_reflection(m: Matrix) -> bool:
    """True iff m is invertible and fixes a hyperplane pointwise."""
    return m.det() != 0 and fixed_space(m).dim == m.n - 1


def reflection_from_params(field: FieldSpec, phi, w) -> Matrix:
    """The reflection I + w*phi; requires w != 0, phi != 0, 1 + phi(w) != 0."""
    n = len(phi)
    pw = 0
    for a, b in zip(phi, w):
        pw = field.add(pw, field.mul(a, b))
    if not any(phi) or not any(w) or field.add(1, pw) == 0:
        raise ValueError("parameters do not define a reflection")
    entries = [field.add(1 if i == j else 0, field.mul(w[i], phi[j]))
               for i in range(n) for j in range(n)]
    return Matrix(field, n, entries)


def reflection_params(m: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Recover (phi, w) with m = I + w*phi, phi canonicalized so its first
    nonzero entry is 1."""
    if not is_reflection(m):
        raise ValueError("matrix is not a reflection")
    n, fld = m.n, m.field
    diff = [[fld.sub(m.entries[i * n + j], 1 if i == j else 0) for j in range(n)]
            for i in range(n)]
    row_idx = next(i for i in range(n) if any(diff[i]))
    col_idx = next(j for j in range(n) if diff[row_idx][j])
    scale = fld.inv(diff[row_idx][col_idx])
    phi = tuple(fld.mul(scale, v) for v in diff[row_idx])
    # first nonzero of phi is at col_idx with value 1; w reads off that column
    w = tuple(diff[i][col_idx] for i in range(n))
    return phi, w


@functools.lru_cache(maxsize=None)
def enumerate_reflections(n: int, field: FieldSpec) -> tuple[Matrix, ...]:
    """All reflections in GL_n(F_q), each exactly once, deterministic order.

    Grouped by canonical hyperplane functional phi; for fixed phi the valid
    w are the nonzero vectors with phi(w) != -1, giving
    (q^n - 1)/(q - 1) * (q^{n-1}(q - 1) - 1) reflections in total.
    """
    q = field.q
    if q ** (2 * n) > ENUMERATION_BUDGET:
        raise BudgetExceededError("reflection enumeration exceeds budget")
    minus_one = field.neg(1)
    out = []
    for phi in itertools.product(range(q), repeat=n):
        first = next((v for v in phi if v), None)
        if first != 1:
            continue
        for w in itertools.product(range(q), repeat=n):
            if not any(w):
                continue
            pw = 0
            for a, b in zip(phi, w):
                pw = field.add(pw, field.mul(a, b))
            if pw == minus_one:
                continue
            out.append(reflection_from_params(field, phi, w))
    expected = (q**n - 1) // (q - 1) * (q ** (n - 1) * (q - 1) - 1)
    assert len(out) == len(set(out)) == expected
    return tuple(out)


@dataclass(frozen=True)
class FactorizationList:
    """An ordered tuple of reflections together with their product."""

    factors: tuple[Matrix, ...]
    product: Matrix

    def __post_init__(self):
        acc = Matrix.identity(self.product.field, self.product.n)
        for t in self.factors:
            acc = acc @ t
        if acc != self.product:
            raise ValueError("factors do not multiply to the stated product")
        if not all(is_reflection(t) for t in self.factors):
            raise ValueError("every factor must be a reflection")

    def __len__(self):
        return len(self.factors)

    def dets(self) -> tuple[int, ...]:
        return tuple(t.det() for t in self.factors)

    def serialize(self) -> dict:
        return {"factors": [t.to_text() for t in self.factors],
                "product": self.product.to_text()}


def enumerate_minimal_factorizations(g: Matrix,
                                     budget: int = ENUMERATION_BUDGET
                                     ) -> Iterator[FactorizationList]:
    """All ordered minimum-length reflection factorizations of g.

    Depth-first with length pruning: a partial choice t_1..t_i survives only
    if the residual (t_1...t_i)^-1 g still has reflection length k - i.  The
    final factor is forced, so it is emitted directly.
    """
    if g.det() == 0:
        raise ValueError("only invertible elements factor into reflections")
    k = reflection_length(g)
    if k == 0:
        yield FactorizationList((), g)
        return
    n, field = g.n, g.field
    refl = enumerate_reflections(n, field)
    inv_pairs = [(t, t.inverse().entries) for t in refl]
    counter = itertools.count(1)

    def rec(rem_entries: tuple, depth_left: int, prefix: tuple):
        rem = Matrix(field, n, rem_entries)
        if depth_left == 1:
            if is_reflection(rem):
                yield FactorizationList(prefix + (rem,), g)
            return
        for t, tinv in inv_pairs:
            if next(counter) > budget:
                raise BudgetExceededError("factorization enumeration exceeds budget")
            nxt = mul_entries(tinv, rem_entries, n, field)
            if reflection_length(Matrix(field, n, nxt)) == depth_left - 1:
                yield from rec(nxt, depth_left - 1, prefix + (t,))

    yield from rec(g.entries, k, ())


def minimal_factorization(g: Matrix) -> FactorizationList:
    """One minimum-length factorization (the first in enumeration order)."""
    return next(enumerate_minimal_factorizations(g))


def _extend_by_identity(field: FieldSpec, small: Matrix, total: int) -> Matrix:
    entries = [0] * (total * total)
    r = small.n
    for i in range(r):
        for j in range(r):
            entries[i * total + j] = small.entries[i * r + j]
    for i in range(r, total):
        entries[i * total + i] = 1
    return Matrix(field, total, entries)


def _greedy_extend(field: FieldSpec, base: list, candidates) -> list:
    """Rows from candidates that successively enlarge the span of base."""
    from .matrix import _rref

    picked = []
    rows = [list(r) for r in base]
    rank = len(_rref([list(r) for r in rows], field)[0])
    for cand in candidates:
        trial = rows + [list(cand)]
        new_rank = len(_rref([list(r) for r in trial], field)[0])
        if new_rank > rank:
            picked.append(list(cand))
            rows = trial
            rank = new_rank
    return picked


def stabilizing_factorization(g: Matrix, w: Subspace) -> FactorizationList:
    """A minimum-length factorization of g whose factors all stabilize W.

    Construction: split V = W + U, minimally factor the restriction of g
    to W and extend each factor by the identity on U; the residual then
    fixes W pointwise, so every factor of its minimal factorization fixes
    W too.  U must contain a complement of fix(g) n W inside fix(g):
    otherwise the residual's fixed space comes out too small and the two
    stages overshoot the minimum length.  U is that complement padded
    with standard basis vectors.
    """
    from .matrix import stabilizes

    n, field = g.n, g.field
    if w.is_zero or w.is_full:
        raise ValueError("W must be a nontrivial proper subspace")
    if not stabilizes(g, w):
        raise ValueError("g does not stabilize W")
    r = w.dim
    fix_rows = _greedy_extend(field, list(w.basis), fixed_space(g).basis)
    std = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pad_rows = _greedy_extend(field, list(w.basis) + fix_rows, std)
    basis_cols = [list(row) for row in w.basis] + fix_rows + pad_rows
    p = Matrix(field, n, [basis_cols[j][i] for i in range(n) for j in range(n)])
    pinv = p.inverse()

    # restriction of g to W in the RREF-basis coordinates
    cols = [w.coordinates(g.apply(row)) for row in w.basis]
    g_w = Matrix(field, r, [cols[j][i] for i in range(r) for j in range(r)])

    head = []
    for tau in minimal_factorization(g_w).factors:
        t = p @ _extend_by_identity(field, tau, n) @ pinv
        head.append(t)

    residual = g
    for t in head:
        residual = t.inverse() @ residual
    # the residual fixes W pointwise; by the fixed-space additivity this
    # makes the two factorization stages sum to the minimum total length
    res_fix = fixed_space(residual)
    assert all(res_fix.contains(row) for row in w.basis)
    assert res_fix.dim == fixed_space(g).dim + len(head)

    tail = minimal_factorization(residual).factors
    factors = tuple(head) + tail
    result = FactorizationList(factors, g)
    assert len(result) == reflection_length(g)
    assert all(stabilizes(t, w) for t in factors)
    return result


def det_subgroup(field: FieldSpec, generator: int) -> frozenset[int]:
    """The cyclic subgroup of F_q^x generated by the given encoding."""
    if not 0 < generator < field.q:
        raise ValueError(f"{generator} is not a unit encoding in [1, {field.q})")
    out = {1}
    v = generator
    while v != 1:
        out.add(v)
        v = field.mul(v, generator)
    return frozenset(out)


def factorizations_in_det_subgroup(g: Matrix, generator: int) -> list[FactorizationList]:
    """All minimal factorizations of g whose factors' determinants lie in
    the subgroup X generated by the given unit; g must be irreducible with
    det(g) in X."""
    from .singer import is_irreducible_element

    x = det_subgroup(g.field, generator)
    if g.det() not in x:
        raise ValueError("det(g) must lie in the determinant subgroup")
    if not is_irreducible_element(g):
        raise ValueError("the determinant-restricted count applies to irreducible g")
    return [fl for fl in enumerate_minimal_factorizations(g)
            if all(d in x for d in fl.dets())]


def reflection_distances(n: int, field: FieldSpec) -> dict[Matrix, int]:
    """Cayley-graph distance from the identity to every element of
    GL_n(F_q), with the full reflection set as generators (BFS)."""
    refl = enumerate_reflections(n, field)
    ident = Matrix.identity(field, n)
    dist = {ident: 0}
    frontier = [ident]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for a in frontier:
            for t in refl:
                b = a @ t
                if b not in dist:
                    dist[b] = d
                    nxt.append(b)
        frontier = nxt
    return dist
