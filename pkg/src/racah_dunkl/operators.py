"""Linear operators on polynomial spaces, built from Dunkl operators.

Operators are lazy: a LinearOperator wraps a polynomial-to-polynomial
function and composes under sum, scalar multiple, product (composition)
and commutator.  Equality of operators is always decided by materializing
their action on an explicit basis, typically the monomials of a fixed
homogeneous degree; all the verified identities are degree-homogeneous,
so this is sound.

Index conventions follow the coordinate notation: operator builders take
1-based variable indices, and subsets are subsets of {1, .., n}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .linalg import InconsistentSystem, RationalMatrix, solve_in_span
from .poly import Monomial, ParameterSet, Polynomial, monomial_basis, poly_to_vector


class ImageEscapesSpan(ValueError):
    """Raised when an operator image leaves the span it is materialized on."""


def normalize_subset(A: Iterable[int], n: int) -> tuple[int, ...]:
    """Sorted tuple form of a nonempty subset of {1..n}."""
    subset = tuple(sorted(set(A)))
    if not subset:
        raise ValueError("subset must be nonempty")
    if subset[0] < 1 or subset[-1] > n:
        raise ValueError(f"subset {subset} not contained in 1..{n}")
    return subset


class LinearOperator:
    """A composable linear map on polynomials."""

    __slots__ = ("fn", "descriptor")

    def __init__(self, fn: Callable[[Polynomial], Polynomial], descriptor: str = "?"):
        self.fn = fn
        self.descriptor = descriptor

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.fn(p)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(
            lambda p: self.fn(p) + other.fn(p),
            f"({self.descriptor} + {other.descriptor})",
        )

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(
            lambda p: self.fn(p) - other.fn(p),
            f"({self.descriptor} - {other.descriptor})",
        )

    def __neg__(self) -> "LinearOperator":
        return LinearOperator(lambda p: -self.fn(p), f"(-{self.descriptor})")

    def __mul__(self, other):
        if isinstance(other, LinearOperator):
            # operator product = composition, rightmost acts first
            return LinearOperator(
                lambda p: self.fn(other.fn(p)),
                f"{self.descriptor} {other.descriptor}",
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "LinearOperator":
        c = Fraction(c)
        return LinearOperator(lambda p: self.fn(p).scale(c), f"{c} {self.descriptor}")

    def __pow__(self, k: int) -> "LinearOperator":
        if k < 0:
            raise ValueError("operators have no inverse power")

        def apply(p: Polynomial) -> Polynomial:
            for _ in range(k):
                p = self.fn(p)
            return p

        return LinearOperator(apply, f"{self.descriptor}^{k}")

    def commutator(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(
            lambda p: self.fn(other.fn(p)) - other.fn(self.fn(p)),
            f"[{self.descriptor}, {other.descriptor}]",
        )

    def anticommutator(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(
            lambda p: self.fn(other.fn(p)) + other.fn(self.fn(p)),
            f"{{{self.descriptor}, {other.descriptor}}}",
        )

    def __repr__(self) -> str:
        return f"LinearOperator({self.descriptor})"


def identity_op() -> LinearOperator:
    return LinearOperator(lambda p: p, "1")


def zero_op() -> LinearOperator:
    return LinearOperator(lambda p: Polynomial.zero(p.n), "0")


def reflection(i: int) -> LinearOperator:
    """Sign flip r_i: x_i -> -x_i."""
    return LinearOperator(lambda p: p.reflect(i), f"r{i}")


def coordinate(i: int) -> LinearOperator:
    """Multiplication by x_i."""

    def apply(p: Polynomial) -> Polynomial:
        return Polynomial.variable(p.n, i) * p

    return LinearOperator(apply, f"x{i}")


def derivative(i: int) -> LinearOperator:
    return LinearOperator(lambda p: p.partial_derivative(i), f"d{i}")


def dunkl(params: ParameterSet, i: int) -> LinearOperator:
    """The deformed derivative T_i = d_i + (mu_i / x_i)(1 - r_i).

    On a monomial the reflection-difference term contributes 2*mu_i times
    the lowered monomial exactly when the x_i exponent is odd, so the
    coordinate division is always exact and the whole map lowers degree
    by one.
    """
    mu = params.mu_of(i)
    pos = i - 1
    two_mu = 2 * mu

    def apply(p: Polynomial) -> Polynomial:
        out: dict[Monomial, Fraction] = {}
        for exps, coeff in p.terms.items():
            e = exps[pos]
            if e == 0:
                continue
            factor = e + two_mu if e % 2 else Fraction(e)
            lowered = exps[:pos] + (e - 1,) + exps[pos + 1:]
            new = out.get(lowered, Fraction(0)) + coeff * factor
            if new:
                out[lowered] = new
            else:
                out.pop(lowered, None)
        return Polynomial(p.n, out)

    return LinearOperator(apply, f"T{i}")


def laplace(params: ParameterSet, A: Iterable[int]) -> LinearOperator:
    """Sum of squared Dunkl operators over the index set A."""
    subset = normalize_subset(A, params.n)
    ops = [dunkl(params, i) for i in subset]

    def apply(p: Polynomial) -> Polynomial:
        total = Polynomial.zero(p.n)
        for op in ops:
            total = total + op(op(p))
        return total

    return LinearOperator(apply, f"Lap{{{','.join(map(str, subset))}}}")


def norm_square_mul(A: Iterable[int], n: int) -> LinearOperator:
    """Multiplication by the squared norm over A, sum of x_i^2 for i in A."""
    subset = normalize_subset(A, n)
    positions = [i - 1 for i in subset]

    def apply(p: Polynomial) -> Polynomial:
        out: dict[Monomial, Fraction] = {}
        for exps, coeff in p.terms.items():
            for pos in positions:
                raised = exps[:pos] + (exps[pos] + 2,) + exps[pos + 1:]
                new = out.get(raised, Fraction(0)) + coeff
                if new:
                    out[raised] = new
                else:
                    out.pop(raised, None)
        return Polynomial(p.n, out)

    return LinearOperator(apply, f"|x{{{','.join(map(str, subset))}}}|^2")


def norm_square_poly(A: Iterable[int], n: int) -> Polynomial:
    subset = normalize_subset(A, n)
    terms: dict[Monomial, Fraction] = {}
    for i in subset:
        exps = [0] * n
        exps[i - 1] = 2
        terms[tuple(exps)] = Fraction(1)
    return Polynomial(n, terms)


def euler(A: Iterable[int], n: int) -> LinearOperator:
    """Degree-counting operator over A: each monomial is scaled by its A-degree."""
    subset = normalize_subset(A, n)
    positions = [i - 1 for i in subset]

    def apply(p: Polynomial) -> Polynomial:
        out: dict[Monomial, Fraction] = {}
        for exps, coeff in p.terms.items():
            d = sum(exps[pos] for pos in positions)
            if d:
                out[exps] = coeff * d
        return Polynomial(p.n, out)

    return LinearOperator(apply, f"E{{{','.join(map(str, subset))}}}")


def gamma(params: ParameterSet, A: Iterable[int]) -> Fraction:
    """|A|/2 plus the sum of the deformation parameters over A."""
    subset = normalize_subset(A, params.n)
    return Fraction(len(subset), 2) + sum(params.mu_of(i) for i in subset)


def su11_triple(
    params: ParameterSet, A: Iterable[int]
) -> tuple[LinearOperator, LinearOperator, LinearOperator]:
    """The raising/lowering realization (A0, J+, J-) attached to the set A.

    A0 is half the shifted degree operator, J+ multiplies by the squared
    norm over A (times 1/2), and J- is half the deformed Laplacian over A.
    """
    subset = normalize_subset(A, params.n)
    gam = gamma(params, subset)
    eul = euler(subset, params.n)
    nrm = norm_square_mul(subset, params.n)
    lap = laplace(params, subset)

    half = Fraction(1, 2)
    a0 = LinearOperator(
        lambda p: (eul(p) + p.scale(gam)).scale(half),
        f"A0{{{','.join(map(str, subset))}}}",
    )
    j_plus = nrm.scale(half)
    j_minus = lap.scale(half)
    return a0, j_plus, j_minus


def casimir(params: ParameterSet, A: Iterable[int]) -> LinearOperator:
    """Quadratic invariant of the su(1,1) realization on the set A.

    C_A = 1/4 * ((E_A + gamma_A)^2 - 2(E_A + gamma_A) - |x_A|^2 Lap_A);
    degree preserving, and a symmetry of the full deformed Laplacian.
    """
    subset = normalize_subset(A, params.n)
    gam = gamma(params, subset)
    eul = euler(subset, params.n)
    nrm = norm_square_mul(subset, params.n)
    lap = laplace(params, subset)
    quarter = Fraction(1, 4)

    def apply(p: Polynomial) -> Polynomial:
        shifted = eul(p) + p.scale(gam)
        shifted2 = eul(shifted) + shifted.scale(gam)
        return (shifted2 - shifted.scale(2) - nrm(lap(p))).scale(quarter)

    return LinearOperator(apply, f"C{{{','.join(map(str, subset))}}}")


def angular(params: ParameterSet, i: int, j: int) -> LinearOperator:
    """Deformed angular momentum x_i T_j - x_j T_i; requires i != j."""
    if i == j:
        raise ValueError("angular momentum needs two distinct indices")
    ti = dunkl(params, i)
    tj = dunkl(params, j)
    pos_i, pos_j = i - 1, j - 1

    def mul_var(p: Polynomial, pos: int) -> Polynomial:
        return Polynomial(
            p.n,
            {e[:pos] + (e[pos] + 1,) + e[pos + 1:]: c for e, c in p.terms.items()},
        )

    def apply(p: Polynomial) -> Polynomial:
        return mul_var(tj(p), pos_i) - mul_var(ti(p), pos_j)

    return LinearOperator(apply, f"L{i}{j}")


def racah_p(params: ParameterSet, i: int, j: int) -> LinearOperator:
    """Presentation generator P_ij = C_ij - C_i - C_j."""
    if i == j:
        raise ValueError("indices must be distinct")
    cij = casimir(params, (i, j))
    ci = casimir(params, (i,))
    cj = casimir(params, (j,))
    return LinearOperator(
        lambda p: cij(p) - ci(p) - cj(p), f"P{{{i},{j}}}"
    )


def racah_f(params: ParameterSet, i: int, j: int, k: int) -> LinearOperator:
    """Presentation generator F_ijk = [P_ij, P_jk] / 2."""
    if len({i, j, k}) != 3:
        raise ValueError("indices must be pairwise distinct")
    pij = racah_p(params, i, j)
    pjk = racah_p(params, j, k)
    comm = pij.commutator(pjk)
    return comm.scale(Fraction(1, 2))


def racah_f_from_angular(
    params: ParameterSet, i: int, j: int, k: int
) -> LinearOperator:
    """F_ijk expanded through angular momenta and reflections.

    16 F_ijk = L_ij^2 (1 + 2 mu_k r_k) - L_ik^2 (1 + 2 mu_j r_j)
             - L_jk^2 (1 + 2 mu_i r_i) + 2 L_ik L_ij L_jk.

    This is an independent route to the same operator as racah_f and is
    used to cross-check the commutator definition.
    """
    if len({i, j, k}) != 3:
        raise ValueError("indices must be pairwise distinct")
    lij = angular(params, i, j)
    lik = angular(params, i, k)
    ljk = angular(params, j, k)

    def reflect_term(mu: Fraction, idx: int, p: Polynomial) -> Polynomial:
        return p + p.reflect(idx).scale(2 * mu)

    mu_i, mu_j, mu_k = (params.mu_of(t) for t in (i, j, k))

    def apply(p: Polynomial) -> Polynomial:
        total = lij(lij(reflect_term(mu_k, k, p)))
        total = total - lik(lik(reflect_term(mu_j, j, p)))
        total = total - ljk(ljk(reflect_term(mu_i, i, p)))
        total = total + lik(lij(ljk(p))).scale(2)
        return total.scale(Fraction(1, 16))

    return LinearOperator(apply, f"F{{{i},{j},{k}}}(angular form)")


class OperatorMatrix:
    """Exact matrix of an operator on an explicit basis.

    Column j holds the coordinates of the image of basis element j; the
    basis is either the canonical monomial list of a homogeneous degree
    or a caller-supplied list of polynomials.
    """

    __slots__ = ("matrix", "degree", "columns")

    def __init__(self, matrix: RationalMatrix, degree: int | None, columns: tuple):
        self.matrix = matrix
        self.degree = degree
        self.columns = columns

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def at(self, i: int, j: int) -> Fraction:
        return self.matrix.at(i, j)

    def __repr__(self) -> str:
        return f"OperatorMatrix({self.matrix.nrows}x{self.matrix.ncols}, degree={self.degree})"


def materialize_on_monomials(op: LinearOperator, n: int, k: int) -> RationalMatrix:
    """Matrix of a degree-preserving operator on the monomials of degree k."""
    basis = monomial_basis(n, k)
    cols: list[list[Fraction]] = []
    for exps in basis:
        image = op(Polynomial.monomial(n, exps))
        if not image.is_zero and (not image.is_homogeneous() or image.degree() != k):
            raise ImageEscapesSpan(
                f"{op.descriptor} does not preserve homogeneous degree {k}"
            )
        try:
            cols.append(poly_to_vector(image, basis))
        except ValueError as exc:  # pragma: no cover - degree check catches first
            raise ImageEscapesSpan(str(exc)) from exc
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(basis))]
    return RationalMatrix.from_fractions(rows)


def materialize(
    op: LinearOperator,
    n: int,
    k: int,
    basis: list[Polynomial] | None = None,
) -> OperatorMatrix:
    """Exact matrix of op, on monomials of degree k or on a supplied basis.

    Without a basis the operator must preserve homogeneous degree k.  With
    a basis, each image is solved exactly against the basis span; an
    image outside the span raises ImageEscapesSpan.
    """
    if basis is None:
        matrix = materialize_on_monomials(op, n, k)
        return OperatorMatrix(matrix, k, tuple(monomial_basis(n, k)))

    if not basis:
        raise ValueError("basis must be nonempty")
    for q in basis:
        if q.n != n:
            raise ValueError("basis polynomial has wrong dimension")

    images = [op(q) for q in basis]
    support: set[Monomial] = set()
    for q in list(basis) + images:
        support.update(q.terms)
    support_list = sorted(support)
    basis_cols = [poly_to_vector(q, support_list) for q in basis]
    image_cols = [poly_to_vector(q, support_list) for q in images]
    try:
        coeffs = solve_in_span(basis_cols, image_cols)
    except InconsistentSystem as exc:
        raise ImageEscapesSpan(str(exc)) from exc
    rows = [
        [coeffs[j][i] for j in range(len(basis))] for i in range(len(basis))
    ]
    return OperatorMatrix(RationalMatrix.from_fractions(rows), k, tuple(basis))
