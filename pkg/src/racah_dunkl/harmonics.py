"""Harmonic bases of the deformed Laplacian via one-variable extensions.

A degree-k polynomial in m variables that is annihilated by the deformed
Laplacian lifts to a harmonic polynomial in m+1 variables of prescribed
parity in the new variable; the lift is a finite alternating sum whose
j-th term carries the j-th Laplacian power.  Iterating the lift from the
constants, interleaved with multiplications by squared norms, produces a
basis of the degree-k harmonics in all n variables.  Each basis element
is a joint eigenfunction of the tower of quadratic invariants attached to
the prefixes of the variable order, with eigenvalues given in closed form
by casimir_eigenvalue.

Labels are positional: for a label with variable order (o_1, .., o_n),
epsilon[m] is the parity used when variable o_{m+1} is adjoined and
ell[m] is the squared-norm power inserted after that step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .linalg import matrix_rank, solve_in_span
from .operators import gamma, laplace, norm_square_poly
from .poly import Monomial, ParameterSet, Polynomial, monomial_basis, poly_to_vector
from .report import Report


def raising_factorial(x: Fraction, j: int) -> Fraction:
    """x (x+1) ... (x+j-1)."""
    out = Fraction(1)
    for t in range(j):
        out *= x + t
    return out


def falling_factorial(x: Fraction | int, j: int) -> Fraction:
    """x (x-1) ... (x-j+1)."""
    out = Fraction(1)
    for t in range(j):
        out *= x - t
    return out


def poly_space_dim(n: int, k: int) -> int:
    """Dimension of the homogeneous degree-k polynomials in n variables."""
    if k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return comb(n + k - 1, k)


def harmonic_space_dim(n: int, k: int) -> int:
    """Dimension of the degree-k harmonics in n variables."""
    return poly_space_dim(n - 1, k) + poly_space_dim(n - 1, k - 1)


@dataclass(frozen=True)
class HarmonicLabel:
    """Index data of one tower basis element.

    order is the variable sequence of the construction (innermost first),
    epsilon the parities per step, ell the squared-norm powers inserted
    between consecutive steps.
    """

    order: tuple[int, ...]
    epsilon: tuple[int, ...]
    ell: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError(f"order {self.order} is not a permutation of 1..{n}")
        if len(self.epsilon) != n or any(e not in (0, 1) for e in self.epsilon):
            raise ValueError(f"epsilon {self.epsilon} must be a 0/1 vector of length {n}")
        if len(self.ell) != n - 1 or any(l < 0 for l in self.ell):
            raise ValueError(f"ell {self.ell} must be {n - 1} non-negative integers")

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def degree(self) -> int:
        return sum(self.epsilon) + 2 * sum(self.ell)

    def partial_degree(self, m: int) -> int:
        """Degree of the intermediate harmonic after the m-th extension step."""
        if not 1 <= m <= self.n:
            raise IndexError(f"step {m} out of range 1..{self.n}")
        return sum(self.epsilon[:m]) + 2 * sum(self.ell[: m - 1])

    def prefix(self, m: int) -> tuple[int, ...]:
        """The first m variables of the order, as a sorted subset."""
        return tuple(sorted(self.order[:m]))

    def parity_of_variable(self, i: int) -> int:
        """Reflection parity of the realized polynomial in variable i."""
        return self.epsilon[self.order.index(i)]

    def variable_parities(self) -> tuple[int, ...]:
        """Parities keyed by variable (index i-1 holds the parity in x_i)."""
        out = [0] * self.n
        for pos, var in enumerate(self.order):
            out[var - 1] = self.epsilon[pos]
        return tuple(out)

    def to_json_obj(self) -> dict:
        return {
            "order": list(self.order),
            "epsilon": list(self.epsilon),
            "ell": list(self.ell),
        }


@dataclass(frozen=True)
class HarmonicBasisElement:
    label: HarmonicLabel
    poly: Polynomial


def ck_extend(
    params: ParameterSet,
    vars_done: Sequence[int],
    new_var: int,
    parity: int,
    p: Polynomial,
) -> Polynomial:
    """Lift p to a harmonic in vars_done + {new_var} of given parity.

    The lift is sum_j (-1)^j x_new^(2j+parity) Lap^j p / (4^j j! c^(j))
    with c = mu_new + 1/2 + parity and c^(j) the raising factorial; the
    sum is finite because the Laplacian over vars_done kills p eventually.
    Requires p homogeneous and supported on vars_done.
    """
    n = params.n
    vars_done = tuple(dict.fromkeys(vars_done))
    if parity not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {parity}")
    if not 1 <= new_var <= n:
        raise IndexError(f"variable index {new_var} out of range 1..{n}")
    if new_var in vars_done:
        raise ValueError(f"x{new_var} is already among the extended variables")
    if p.n != n:
        raise ValueError(f"dimension mismatch: polynomial has {p.n}, parameters have {n}")
    if not p.is_homogeneous():
        raise ValueError("input to the extension must be homogeneous")
    outside = p.support_variables() - set(vars_done)
    if outside:
        raise ValueError(f"input involves variables outside vars_done: {sorted(outside)}")

    base = params.mu_of(new_var) + Fraction(1, 2) + parity
    lap = laplace(params, vars_done) if vars_done else None
    pos = new_var - 1

    result = Polynomial.zero(n)
    q = p
    j = 0
    while not q.is_zero:
        denom = Fraction(4) ** j * factorial(j) * raising_factorial(base, j)
        coeff = Fraction((-1) ** j) / denom
        exps = [0] * n
        exps[pos] = 2 * j + parity
        result = result + Polynomial.monomial(n, exps, coeff) * q
        if lap is None:
            break
        q = lap(q)
        j += 1
    return result


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer tuples with the given sum, in ascending lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_labels(
    n: int, k: int, order: Sequence[int] | None = None
) -> list[HarmonicLabel]:
    """All labels of total degree k, in the canonical deterministic order.

    Enumeration is lexicographic in the reversed parity vector, then in
    the reversed norm-power vector, which fixes basis ordering for every
    matrix built on these labels.
    """
    order = tuple(order) if order is not None else tuple(range(1, n + 1))
    labels: list[HarmonicLabel] = []
    for eps_rev in product((0, 1), repeat=n):
        rem = k - sum(eps_rev)
        if rem < 0 or rem % 2:
            continue
        for ell_rev in _compositions(rem // 2, n - 1):
            labels.append(
                HarmonicLabel(order, tuple(reversed(eps_rev)), tuple(reversed(ell_rev)))
            )
    return labels


def realize_label(params: ParameterSet, label: HarmonicLabel) -> Polynomial:
    """Evaluate the alternating tower of extensions and norm multiplications."""
    n = params.n
    if label.n != n:
        raise ValueError("label dimension does not match parameters")
    o = label.order
    h = ck_extend(params, (), o[0], label.epsilon[0], Polynomial.one(n))
    for m in range(2, n + 1):
        done = o[: m - 1]
        power = label.ell[m - 2]
        if power:
            h = norm_square_poly(done, n) ** power * h
        h = ck_extend(params, done, o[m - 1], label.epsilon[m - 1], h)
    return h


def build_basis_tower(
    params: ParameterSet, k: int, order: Sequence[int] | None = None
) -> list[HarmonicBasisElement]:
    """The realized harmonic basis of degree k for the given variable order."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    return [
        HarmonicBasisElement(label, realize_label(params, label))
        for label in enumerate_labels(params.n, k, order)
    ]


def jacobi_closed_form(params: ParameterSet, label: HarmonicLabel) -> Polynomial:
    """Closed-form product expansion of a tower basis element.

    Each extension step contributes a terminating hypergeometric factor in
    the ratio -x^2 / |x_prefix|^2; expanding it with the powers of the
    prefix norm clears every denominator, so the result is an exact
    polynomial.  It must coincide with realize_label on the same label,
    which is the correctness oracle relating the two constructions.
    """
    n = params.n
    if label.n != n:
        raise ValueError("label dimension does not match parameters")
    o = label.order
    exps = [0] * n
    exps[o[0] - 1] = label.epsilon[0]
    h = Polynomial.monomial(n, exps)
    deg = label.epsilon[0]
    for m in range(2, n + 1):
        done = o[: m - 1]
        power = label.ell[m - 2]
        eps = label.epsilon[m - 1]
        var = o[m - 1]
        gam = gamma(params, done)
        base = params.mu_of(var) + Fraction(1, 2) + eps
        nrm = norm_square_poly(done, n)
        total = Polynomial.zero(n)
        for j in range(power + 1):
            coeff = (
                Fraction((-1) ** j)
                * falling_factorial(power, j)
                * falling_factorial(deg + power - 1 + gam, j)
                / (factorial(j) * raising_factorial(base, j))
            )
            mono = [0] * n
            mono[var - 1] = 2 * j + eps
            total = total + Polynomial.monomial(n, mono, coeff) * nrm ** (power - j) * h
        h = total
        deg += 2 * power + eps
    return h


def casimir_eigenvalue(params: ParameterSet, label: HarmonicLabel, m: int) -> Fraction:
    """Eigenvalue of the prefix invariant C over the first m order variables.

    The realized element of the label is an eigenfunction with eigenvalue
    (d + g)(d + g - 2)/4, where d is the label's partial degree at step m
    and g the gamma constant of the prefix subset.
    """
    if not 2 <= m <= label.n:
        raise IndexError(f"prefix length {m} out of range 2..{label.n}")
    d = label.partial_degree(m)
    gam = gamma(params, label.prefix(m))
    return (d + gam) * (d + gam - 2) / 4


def parity_project(p: Polynomial, i: int, sign: int) -> Polynomial:
    """Projection onto the even (+1) or odd (-1) part in x_i."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return (p + p.reflect(i).scale(sign)).scale(Fraction(1, 2))


def fischer_decompose(
    params: ParameterSet, p: Polynomial
) -> list[tuple[int, Polynomial]]:
    """Split a homogeneous p into norm-power times harmonic components.

    Returns the pairs (j, h) with p equal to the sum of |x|^(2j) h over
    the returned entries, each h harmonic of degree deg(p) - 2j; zero
    components are omitted.  The splitting is found by one exact linear
    solve against the realized harmonic bases of the admissible degrees.
    """
    n = params.n
    if p.n != n:
        raise ValueError("dimension mismatch")
    if not p.is_homogeneous():
        raise ValueError("only homogeneous polynomials decompose")
    if p.is_zero:
        return []
    k = p.degree()
    full = tuple(range(1, n + 1))
    nrm = norm_square_poly(full, n)

    span: list[Polynomial] = []
    tags: list[tuple[int, Polynomial]] = []
    for j in range(k // 2 + 1):
        nrm_pow = nrm**j
        for element in build_basis_tower(params, k - 2 * j):
            span.append(nrm_pow * element.poly)
            tags.append((j, element.poly))

    support: set[Monomial] = set()
    for q in span:
        support.update(q.terms)
    support.update(p.terms)
    support_list = sorted(support)
    columns = [poly_to_vector(q, support_list) for q in span]
    target = poly_to_vector(p, support_list)
    coeffs = solve_in_span(columns, [target])[0]

    components: dict[int, Polynomial] = {}
    for (j, harmonic), c in zip(tags, coeffs):
        if c:
            components[j] = components.get(j, Polynomial.zero(n)) + harmonic.scale(c)
    return [(j, components[j]) for j in sorted(components) if not components[j].is_zero]


def verify_power_action(
    params: ParameterSet, h: Polynomial, ell: int, j: int, k: int
) -> Report:
    """Check the Laplacian-power action on norm multiples of a harmonic.

    For h harmonic of degree ell and j <= k, the j-th Laplacian power of
    |x|^(2k) h equals 4^j (k)_j (ell+k-1+g)_j |x|^(2(k-j)) h with falling
    factorials and g the gamma constant of the full variable set.
    """
    n = params.n
    if j > k or j < 0:
        raise ValueError("need 0 <= j <= k")
    full = tuple(range(1, n + 1))
    lap = laplace(params, full)
    if not h.is_homogeneous() or (not h.is_zero and h.degree() != ell):
        raise ValueError(f"h is not homogeneous of degree {ell}")
    if not lap(h).is_zero:
        raise ValueError("h is not harmonic")

    nrm = norm_square_poly(full, n)
    lhs = nrm**k * h
    for _ in range(j):
        lhs = lap(lhs)
    gam = gamma(params, full)
    factor = (
        Fraction(4) ** j
        * falling_factorial(k, j)
        * falling_factorial(ell + k - 1 + gam, j)
    )
    rhs = (nrm ** (k - j) * h).scale(factor)
    diff = lhs - rhs
    report = Report()
    report.add(
        "laplacian-power-action",
        (ell, j, k),
        ell + 2 * k,
        diff.is_zero,
        None if diff.is_zero else diff.to_text(),
    )
    return report


def verify_tower(params: ParameterSet, kmax: int) -> Report:
    """Tower bases are harmonic, correctly sized, and linearly independent."""
    n = params.n
    full = tuple(range(1, n + 1))
    lap = laplace(params, full)
    report = Report()
    for k in range(kmax + 1):
        elements = build_basis_tower(params, k)

        witness = None
        for el in elements:
            image = lap(el.poly)
            if not image.is_zero:
                witness = image.to_text()
                break
        report.add("tower-element-harmonic", (), k, witness is None, witness)

        expected = harmonic_space_dim(n, k)
        report.add(
            "tower-count",
            (),
            k,
            len(elements) == expected,
            None if len(elements) == expected else f"{len(elements)} != {expected}",
        )

        support: set[Monomial] = set()
        for el in elements:
            support.update(el.poly.terms)
        support_list = sorted(support)
        vectors = [poly_to_vector(el.poly, support_list) for el in elements]
        rank = matrix_rank(vectors) if vectors else 0
        report.add(
            "tower-linear-independence",
            (),
            k,
            rank == len(elements),
            None if rank == len(elements) else f"rank {rank} < {len(elements)}",
        )
    return report


def verify_extension_restrictions(params: ParameterSet, kmax: int) -> Report:
    """Injectivity witnesses of the extension maps, on every monomial input.

    The even extension restricts back to its input at x_new = 0; the odd
    extension does so after one derivative in the new variable; both
    extensions land in the kernel of the full Laplacian.
    """
    n = params.n
    if n < 2:
        raise ValueError("extensions need at least two variables")
    done = tuple(range(1, n))
    new = n
    lap = laplace(params, tuple(range(1, n + 1)))
    report = Report()
    for k in range(kmax + 1):
        even_bad = odd_bad = harm_bad = None
        for exps in monomial_basis(n - 1, k):
            p = Polynomial.monomial(n, tuple(exps) + (0,))
            ext0 = ck_extend(params, done, new, 0, p)
            ext1 = ck_extend(params, done, new, 1, p)
            if even_bad is None and ext0.restrict_to_zero(new) != p:
                even_bad = p.to_text()
            if odd_bad is None and ext1.partial_derivative(new).restrict_to_zero(new) != p:
                odd_bad = p.to_text()
            if harm_bad is None and not (lap(ext0).is_zero and lap(ext1).is_zero):
                harm_bad = p.to_text()
        report.add("extension-restriction-even", (), k, even_bad is None, even_bad)
        report.add("extension-derivative-restriction-odd", (), k, odd_bad is None, odd_bad)
        report.add("extension-harmonic", (), k, harm_bad is None, harm_bad)
    return report


def verify_closed_form(params: ParameterSet, kmax: int) -> Report:
    """The product closed form equals the tower realization, label by label."""
    report = Report()
    for k in range(kmax + 1):
        witness = None
        bad_label: tuple = ()
        for label in enumerate_labels(params.n, k):
            tower = realize_label(params, label)
            closed = jacobi_closed_form(params, label)
            if tower != closed:
                witness = (closed - tower).to_text()
                bad_label = (label.epsilon, label.ell)
                break
        report.add("closed-form-matches-tower", bad_label, k, witness is None, witness)
    return report


def verify_spectral_action(
    params: ParameterSet, kmax: int, order: Sequence[int] | None = None
) -> Report:
    """Prefix invariants act on every tower element by the closed eigenvalue."""
    from .operators import casimir

    n = params.n
    order = tuple(order) if order is not None else tuple(range(1, n + 1))
    ops = {m: casimir(params, tuple(sorted(order[:m]))) for m in range(2, n + 1)}
    report = Report()
    for k in range(kmax + 1):
        for el in build_basis_tower(params, k, order):
            for m in range(2, n + 1):
                value = casimir_eigenvalue(params, el.label, m)
                diff = ops[m](el.poly) - el.poly.scale(value)
                report.add(
                    "spectral-action",
                    (m, el.label.epsilon, el.label.ell),
                    k,
                    diff.is_zero,
                    None if diff.is_zero else diff.to_text(),
                )
    return report


def verify_power_action_sweep(
    params: ParameterSet, ell_max: int, k_max: int
) -> Report:
    """Laplacian-power identity over all tower harmonics and admissible j, k."""
    report = Report()
    for ell in range(ell_max + 1):
        for t, el in enumerate(build_basis_tower(params, ell)):
            for k in range(k_max + 1):
                for j in range(k + 1):
                    sub = verify_power_action(params, el.poly, ell, j, k)
                    for res in sub:
                        report.add(
                            res.relation,
                            (ell, j, k, t),
                            res.degree,
                            res.ok,
                            res.first_discrepancy,
                        )
    return report


def basis_to_json_obj(elements: Iterable[HarmonicBasisElement]) -> list[dict]:
    return [
        {
            "label": el.label.to_json_obj(),
            "degree": el.label.degree,
            "polynomial": el.poly.to_json_obj(),
        }
        for el in elements
    ]


def dimension_table(n: int, kmax: int) -> list[tuple[int, int, int]]:
    """Rows (n, k, dim of the degree-k harmonics) for k = 0..kmax."""
    return [(n, k, harmonic_space_dim(n, k)) for k in range(kmax + 1)]
