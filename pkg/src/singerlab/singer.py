"""Singer cycles and irreducible elements of GL_n(F_q).

Implements the multiplication-matrix embedding of F_{q^n}^x into GL_n(F_q),
independently computable characterizations of irreducible elements and
Singer cycles, and the explicit reflections normalizing a Singer cycle's
cyclic subgroup when n = 2.

Extension-field eigenvalue computations work in the residue field
F_q[x]/(f) for f the characteristic polynomial, so no fixed model of
F_{q^n} is ever required; symmetric expressions in the eigenvalue orbit
are checked to be constants before being cast down to F_q.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .ff import FieldSpec
from .matrix import (Matrix, char_poly, enumerate_subspaces, fixed_space,
                     matrix_order)
from .poly import (FieldExtension, Poly, companion, enumerate_monic,
                   find_primitive_poly, is_irreducible, is_primitive_poly)


class EmbeddingBasis:
    """An ordered F_q-basis of the residue-field model of F_{q^n}."""

    def __init__(self, ext: FieldExtension, basis):
        self.ext = ext
        self.basis = tuple(ext.reduce(b) for b in basis)
        n = ext.degree
        if len(self.basis) != n:
            raise ValueError(f"expected {n} basis elements")
        cols = [self._coeff_vector(b) for b in self.basis]
        coord = Matrix(ext.ground, n,
                       [cols[j][i] for i in range(n) for j in range(n)])
        if coord.det() == 0:
            raise ValueError("basis elements are linearly dependent over F_q")
        self.coord_matrix = coord
        self.coord_inverse = coord.inverse()

    @classmethod
    def power_basis(cls, ext: FieldExtension) -> "EmbeddingBasis":
        """(1, z, ..., z^{n-1}) for z the residue class of x."""
        return cls(ext, [ext.pow(ext.x, i) for i in range(ext.degree)])

    @property
    def ground(self) -> FieldSpec:
        return self.ext.ground

    def _coeff_vector(self, b: Poly) -> tuple[int, ...]:
        return tuple(b[i] for i in range(self.ext.degree))

    def __repr__(self):
        return f"EmbeddingBasis({self.ext!r}, {list(self.basis)})"


def embed(alpha: Poly, basis: EmbeddingBasis) -> Matrix:
    """Matrix of multiplication by alpha on F_{q^n} in the given basis.

    The map is an injective group homomorphism from F_{q^n}^x into
    GL_n(F_q); alpha must be nonzero.
    """
    ext = basis.ext
    alpha = ext.reduce(alpha)
    if alpha.is_zero:
        raise ZeroDivisionError("multiplication by zero is not invertible")
    n = ext.degree
    cols = [basis._coeff_vector(ext.mul(alpha, b)) for b in basis.basis]
    images = Matrix(ext.ground, n, [cols[j][i] for i in range(n) for j in range(n)])
    return basis.coord_inverse @ images


def is_irreducible_element(g: Matrix) -> bool:
    """True iff the characteristic polynomial of g is irreducible over F_q."""
    return is_irreducible(char_poly(g))


def is_irreducible_oracle(g: Matrix) -> bool:
    """Subspace-scan check: g stabilizes no subspace of dimension 1..n-1."""
    from .matrix import stabilizes

    for d in range(1, g.n):
        for w in enumerate_subspaces(g.n, g.field, d):
            if stabilizes(g, w):
                return False
    return g.n >= 1


def is_singer(g: Matrix) -> bool:
    """True iff the characteristic polynomial of g is primitive."""
    return is_primitive_poly(char_poly(g))


@functools.lru_cache(maxsize=None)
def max_irreducible_order(n: int, field: FieldSpec) -> int:
    """Largest root order over all monic irreducible degree-n polynomials."""
    best = 0
    for f in enumerate_monic(n, field, nonzero_constant=True):
        if is_irreducible(f):
            best = max(best, FieldExtension(f, check=False).element_order(Poly.x(field)))
    return best


@functools.lru_cache(maxsize=None)
def _standard_ext(n: int, field: FieldSpec) -> FieldExtension:
    return FieldExtension(find_primitive_poly(n, field), check=False)


@functools.lru_cache(maxsize=None)
def _primitive_minpolys(n: int, field: FieldSpec) -> frozenset[Poly]:
    """Minimal polynomials of the primitive elements of the standard F_{q^n}."""
    ext = _standard_ext(n, field)
    out = set()
    for a in ext.elements():
        if not a.is_zero and ext.is_primitive(a):
            out.add(ext.minimal_poly(a))
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def _generator_minpolys(n: int, field: FieldSpec) -> frozenset[Poly]:
    """Minimal polynomials of the degree-n field generators of F_{q^n}."""
    ext = _standard_ext(n, field)
    out = set()
    for a in ext.elements():
        if not a.is_zero and len(ext.frobenius_orbit(a)) == n:
            out.add(ext.minimal_poly(a))
    return frozenset(out)


@dataclass(frozen=True)
class IrreducibleConditions:
    """The three equivalent characterizations of an irreducible element."""

    embeds_field_generator: bool   # char poly is the minimal poly of a field generator
    char_poly_irreducible: bool    # Rabin test on the characteristic polynomial
    no_invariant_subspace: bool    # exhaustive subspace scan

    def as_tuple(self) -> tuple[bool, ...]:
        return (self.embeds_field_generator, self.char_poly_irreducible,
                self.no_invariant_subspace)

    @property
    def consistent(self) -> bool:
        return len(set(self.as_tuple())) == 1


def irreducible_conditions(g: Matrix) -> IrreducibleConditions:
    f = char_poly(g)
    return IrreducibleConditions(
        embeds_field_generator=f in _generator_minpolys(g.n, g.field),
        char_poly_irreducible=is_irreducible(f),
        no_invariant_subspace=is_irreducible_oracle(g),
    )


@dataclass(frozen=True)
class SingerConditions:
    """Independently computed versions of the six Singer-cycle criteria."""

    embeds_primitive_element: bool  # char poly is the minimal poly of a primitive element
    irreducible_max_order: bool     # subspace scan + order against the irreducible maximum
    order_full: bool                # multiplicative order equals q^n - 1
    char_poly_primitive: bool       # root of the char poly generates the residue field
    transitive_on_nonzero: bool     # one g-orbit covers all nonzero vectors
    eigenvalue_primitive: bool      # every Frobenius-conjugate eigenvalue is primitive

    def as_tuple(self) -> tuple[bool, ...]:
        return (self.embeds_primitive_element, self.irreducible_max_order,
                self.order_full, self.char_poly_primitive,
                self.transitive_on_nonzero, self.eigenvalue_primitive)

    @property
    def consistent(self) -> bool:
        return len(set(self.as_tuple())) == 1


def _orbit_transitive(g: Matrix) -> bool:
    n, q = g.n, g.field.q
    start = (1,) + (0,) * (n - 1)
    v = start
    size = 0
    target = q**n - 1
    while True:
        v = g.apply(v)
        size += 1
        if v == start:
            break
        if size > target:
            raise AssertionError("orbit failed to close")  # unreachable for invertible g
    return size == target


def _eigenvalues_primitive(g: Matrix) -> bool:
    f = char_poly(g)
    if not is_irreducible(f):
        return False
    ext = FieldExtension(f, check=False)
    orbit = ext.frobenius_orbit(ext.x)
    if len(orbit) != ext.degree:
        return False
    # each conjugate root must actually be a root, and each must be primitive
    for root in orbit:
        image = ext.zero
        for c in reversed(f.coeffs):
            image = ext.mul(image, root) + Poly(g.field, (c,))
            image = ext.reduce(image)
        if not image.is_zero:
            return False
        if not ext.is_primitive(root):
            return False
    return True


def singer_oracles(g: Matrix) -> SingerConditions:
    """Evaluate all six Singer characterizations by independent routes."""
    n, field = g.n, g.field
    f = char_poly(g)
    order = matrix_order(g)
    return SingerConditions(
        embeds_primitive_element=f in _primitive_minpolys(n, field),
        irreducible_max_order=(is_irreducible_oracle(g)
                               and order == max_irreducible_order(n, field)),
        order_full=order == field.q**n - 1,
        char_poly_primitive=is_primitive_poly(f),
        transitive_on_nonzero=_orbit_transitive(g),
        eigenvalue_primitive=_eigenvalues_primitive(g),
    )


# --- the n = 2 normalizer structure -------------------------------------------


def _cyclic_basis_change(c: Matrix) -> Matrix:
    """P with columns (v, cv, ..., c^{n-1}v) such that P^-1 c P is companion."""
    n = c.n
    v = (1,) + (0,) * (n - 1)
    cols = [v]
    for _ in range(n - 1):
        cols.append(c.apply(cols[-1]))
    return Matrix(c.field, n, [cols[j][i] for i in range(n) for j in range(n)])


def normalizer_reflection(c: Matrix) -> Matrix:
    """The reflection t with t^2 = 1 and t c t = c^q, for a Singer c in GL_2.

    Working in the residue field F_q[x]/(f) with f the characteristic
    polynomial of c and z the class of x (an eigenvalue of c), the matrix
    in the companion basis is [[1, 0], [-(z^-1 + z^-q), -1]]; a general c
    is conjugated to companion form by its cyclic basis and the result is
    conjugated back.
    """
    if c.n != 2:
        raise ValueError("normalizer reflections exist only for n = 2")
    if not is_singer(c):
        raise ValueError("input is not a Singer cycle")
    field = c.field
    q = field.q
    f = char_poly(c)
    ext = FieldExtension(f, check=False)
    z = ext.x
    zinv = ext.inv(z)
    s = zinv + ext.pow(zinv, q)
    w = field.neg(ext.cast_down(s))
    # free consistency checks: trace and norm of the eigenvalue match f
    assert ext.cast_down(z + ext.pow(z, q)) == field.neg(f[1])
    assert ext.cast_down(ext.pow(z, q + 1)) == f[0]
    t_comp = Matrix(field, 2, (1, 0, w, field.neg(1)))
    p = _cyclic_basis_change(c)
    pinv = p.inverse()
    assert pinv @ c @ p == companion(f)
    t = p @ t_comp @ pinv
    assert fixed_space(t).dim == 1  # a genuine reflection, even in char 2
    assert t @ t == Matrix.identity(field, 2)
    assert t @ c @ t == c**q
    return t


def normalizing_reflections(c: Matrix) -> list[Matrix]:
    """All q+1 reflections normalizing <c>, as conjugates c^k t c^-k."""
    if c.n != 2:
        raise ValueError("normalizer reflections exist only for n = 2")
    t = normalizer_reflection(c)
    q = c.field.q
    cinv = c.inverse()
    out = []
    seen = set()
    ck = Matrix.identity(c.field, 2)
    ckinv = ck
    for _ in range(q + 1):
        cand = ck @ t @ ckinv
        if cand not in seen:
            seen.add(cand)
            out.append(cand)
        ck = ck @ c
        ckinv = cinv @ ckinv
    if len(out) != q + 1:
        raise AssertionError("expected exactly q+1 normalizing reflections")
    return out


def singer_equivalence_report(n: int, field: FieldSpec) -> dict:
    """Scan GL_n(F_q) checking that all Singer and irreducibility
    characterizations coincide elementwise."""
    from .matrix import enumerate_gl

    checked = 0
    singer_count = 0
    irreducible_count = 0
    violations = []
    for g in enumerate_gl(n, field):
        sc = singer_oracles(g)
        ic = irreducible_conditions(g)
        if not sc.consistent or not ic.consistent or sc.order_full != is_singer(g):
            violations.append({"matrix": g.to_text(),
                               "singer": sc.as_tuple(), "irreducible": ic.as_tuple()})
        checked += 1
        singer_count += sc.order_full
        irreducible_count += ic.char_poly_irreducible
    return {
        "n": n,
        "q": field.q,
        "checked": checked,
        "singer_cycles": singer_count,
        "irreducible_elements": irreducible_count,
        "violations": violations,
    }
