"""Exact pairing, connection matrices between harmonic bases, and the
tridiagonal-action verification.

The pairing substitutes deformed derivatives for the coordinates of the
left argument and evaluates at the origin.  It is bilinear, symmetric,
positive definite for positive deformation parameters, and turns
coordinate multiplication and the deformed derivative into adjoints of
each other, which makes every quadratic invariant self-adjoint.  Basis
changes themselves are computed by direct exact linear solves in
monomial coordinates; the pairing is used only for orthogonality and
Gram-matrix statements.

Connection matrices follow the expansion convention: W[s][k] is the
coefficient of the k-th target element in the s-th source element, so
composition along a chain of bases multiplies in path order,
W(A->C) = W(A->B) W(B->C).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .harmonics import (
    HarmonicBasisElement,
    HarmonicLabel,
    casimir_eigenvalue,
    realize_label,
)
from .linalg import InconsistentSystem, matrix_rank, solve_in_span
from .operators import LinearOperator, casimir, dunkl, materialize
from .poly import Monomial, ParameterSet, Polynomial, poly_to_vector
from .racah import (
    RacahParameters,
    SpectralData,
    module_dimension,
    racah_parameters,
    racah_recurrence_polys,
    spectral_data,
)
from .report import Report


class SpanMismatch(ValueError):
    """Raised when two bases do not span the same space."""


def fischer_pairing(params: ParameterSet, p: Polynomial, q: Polynomial) -> Fraction:
    """Pairing (p, q) -> constant term of p with coordinates replaced by
    deformed derivatives, applied to q."""
    n = params.n
    if p.n != n or q.n != n:
        raise ValueError("dimension mismatch")
    ops = [dunkl(params, i) for i in range(1, n + 1)]
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        work = q
        for pos, e in enumerate(exps):
            for _ in range(e):
                if work.is_zero:
                    break
                work = ops[pos](work)
        if not work.is_zero:
            total += coeff * work.constant_term()
    return total


@dataclass(frozen=True)
class PairingMatrix:
    labels: tuple
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        m = self.size
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(m)
            for j in range(i)
        )


def gram_matrix(
    params: ParameterSet, elements: Sequence[HarmonicBasisElement]
) -> PairingMatrix:
    polys = [el.poly for el in elements]
    entries = tuple(
        tuple(fischer_pairing(params, p, q) for q in polys) for p in polys
    )
    return PairingMatrix(tuple(el.label for el in elements), entries)


@dataclass(frozen=True)
class ConnectionMatrix:
    from_labels: tuple[HarmonicLabel, ...]
    to_labels: tuple[HarmonicLabel, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.from_labels), len(self.to_labels))

    def at(self, s: int, k: int) -> Fraction:
        return self.entries[s][k]

    def compose(self, other: "ConnectionMatrix") -> "ConnectionMatrix":
        """W(A->B).compose(W(B->C)) = W(A->C)."""
        if self.to_labels != other.from_labels:
            raise ValueError("composition requires matching intermediate bases")
        rows = tuple(
            tuple(
                sum(self.entries[s][k] * other.entries[k][m] for k in range(len(self.to_labels)))
                for m in range(len(other.to_labels))
            )
            for s in range(len(self.from_labels))
        )
        return ConnectionMatrix(self.from_labels, other.to_labels, rows)

    def is_identity(self) -> bool:
        m, n = self.shape
        if m != n:
            return False
        return all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(m)
            for j in range(m)
        )

    def to_json_obj(self) -> dict:
        return {
            "from": [lab.to_json_obj() for lab in self.from_labels],
            "to": [lab.to_json_obj() for lab in self.to_labels],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


def connection_matrix(
    params: ParameterSet,
    source: Sequence[HarmonicBasisElement],
    target: Sequence[HarmonicBasisElement],
) -> ConnectionMatrix:
    """Solve source_s = sum_k W[s][k] target_k exactly.

    Both lists must be bases of the same space: equal lengths, full rank,
    and every source element inside the target span; otherwise
    SpanMismatch is raised.
    """
    if len(source) != len(target):
        raise SpanMismatch(
            f"basis sizes differ: {len(source)} vs {len(target)}"
        )
    support: set[Monomial] = set()
    for el in list(source) + list(target):
        support.update(el.poly.terms)
    support_list = sorted(support)
    target_cols = [poly_to_vector(el.poly, support_list) for el in target]
    source_cols = [poly_to_vector(el.poly, support_list) for el in source]
    if matrix_rank(source_cols) != len(source):
        raise SpanMismatch("source basis is linearly dependent")
    try:
        coeffs = solve_in_span(target_cols, source_cols)
    except (InconsistentSystem, ValueError) as exc:
        raise SpanMismatch(str(exc)) from exc
    return ConnectionMatrix(
        tuple(el.label for el in source),
        tuple(el.label for el in target),
        tuple(tuple(row) for row in coeffs),
    )


@dataclass
class TridiagonalData:
    """Result of materializing an operator on a labeled harmonic basis."""

    entries: list[list[Fraction]]
    blocks: dict[tuple[int, ...], list[int]]  # parity vector -> basis positions
    report: Report

    def block_diagonal(self, parities: tuple[int, ...]) -> list[Fraction]:
        idx = self.blocks[parities]
        return [self.entries[i][i] for i in idx]

    def block_offdiagonal_products(self, parities: tuple[int, ...]) -> list[Fraction]:
        idx = self.blocks[parities]
        return [
            self.entries[idx[t]][idx[t - 1]] * self.entries[idx[t - 1]][idx[t]]
            for t in range(1, len(idx))
        ]


def tridiagonal_check(
    params: ParameterSet,
    op: LinearOperator,
    basis: Sequence[HarmonicBasisElement],
    expected: dict[tuple[int, ...], tuple[list[Fraction], list[Fraction]]] | None = None,
) -> TridiagonalData:
    """Materialize op on the basis and verify its banded block structure.

    Basis elements are grouped into blocks by their per-variable parity
    vector and ordered inside each block by the partial-degree tuple of
    their labels.  The checks assert that op never mixes blocks and acts
    tridiagonally inside each block; when expected values are supplied
    (parity vector -> (diagonal, off-diagonal pair products)) the
    extracted data is compared entry by entry.
    """
    n = params.n
    degree = basis[0].label.degree
    om = materialize(op, n, degree, [el.poly for el in basis])
    entries = om.matrix.to_fractions()
    m = len(basis)

    blocks: dict[tuple[int, ...], list[int]] = {}
    for pos, el in enumerate(basis):
        blocks.setdefault(el.label.variable_parities(), []).append(pos)
    d_tuple = lambda el: tuple(
        el.label.partial_degree(t) for t in range(2, n)
    )
    for key in blocks:
        blocks[key].sort(key=lambda pos: d_tuple(basis[pos]))

    report = Report()
    position_block = {pos: key for key, idx in blocks.items() for pos in idx}
    cross = None
    for i in range(m):
        for j in range(m):
            if entries[i][j] != 0 and position_block[i] != position_block[j]:
                cross = (i, j)
                break
        if cross:
            break
    report.add(
        "parity-block-structure",
        (),
        degree,
        cross is None,
        None if cross is None else f"entry {cross} crosses parity blocks",
    )

    for key, idx in sorted(blocks.items()):
        bad = None
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                if abs(a - b) > 1 and entries[i][j] != 0:
                    bad = (i, j)
                    break
            if bad:
                break
        report.add(
            "tridiagonal-within-block",
            key,
            degree,
            bad is None,
            None if bad is None else f"entry {bad} is outside the band",
        )

    data = TridiagonalData(entries, blocks, report)
    if expected is not None:
        for key, (diag, offsq) in sorted(expected.items()):
            got_diag = data.block_diagonal(key)
            got_off = data.block_offdiagonal_products(key)
            report.add(
                "diagonal-matches",
                key,
                degree,
                got_diag == list(diag),
                None if got_diag == list(diag) else f"{got_diag} != {list(diag)}",
            )
            report.add(
                "offdiagonal-products-match",
                key,
                degree,
                got_off == list(offsq),
                None if got_off == list(offsq) else f"{got_off} != {list(offsq)}",
            )
    return data


def module_basis(
    params: ParameterSet,
    epsilon: Sequence[int],
    d3: int,
    order: Sequence[int] = (1, 2, 3),
) -> list[HarmonicBasisElement]:
    """Fixed-parity three-variable module basis, ordered by the first norm power.

    epsilon is indexed by variable; the labels carry the positional
    parities induced by the requested order.
    """
    if params.n != 3:
        raise ValueError("module bases are three-variable objects")
    order = tuple(order)
    eps_pos = tuple(epsilon[o - 1] for o in order)
    m = module_dimension(epsilon, d3)
    if m == 0:
        raise ValueError(f"no module for parities {tuple(epsilon)} at degree {d3}")
    top = m - 1
    elements = []
    for l1 in range(m):
        label = HarmonicLabel(order, eps_pos, (l1, top - l1))
        elements.append(HarmonicBasisElement(label, realize_label(params, label)))
    return elements


@dataclass
class RankOneOverlap:
    """Connection data of a fixed-parity module between two chain orders."""

    connection: ConnectionMatrix
    tridiagonal: list[list[Fraction]]
    eigenvalues: list[Fraction]
    spectral: SpectralData
    parameters: RacahParameters
    report: Report


def rank_one_overlap(
    params: ParameterSet,
    epsilon: Sequence[int],
    d3: int,
    order: Sequence[int] = (1, 2, 3),
) -> RankOneOverlap:
    """Expand the rotated-order eigenbasis in the base-order one and verify
    that the expansion is governed by the discrete recurrence.

    With phi the base-order module basis and psi the basis for the order
    rotated one step left, the rows of W solve psi_s = sum_k W[s][k] phi_k.
    The normalization-free recurrence statement is checked exactly: the
    monic ratios v_k(s) = (prod_{t<=k} M[t-1][t]) W[s][k] / W[s][0] with M
    the realized tridiagonal matrix satisfy v_k(s) = H_k(mu_s + tau), and
    the top polynomial H_m annihilates the whole shifted spectrum.

    A degenerate spectrum is reported as a failed distinct-spectrum check
    and the ratio checks are skipped, never silently resolved.
    """
    order = tuple(order)
    rotated = (order[1], order[2], order[0])
    phi = module_basis(params, epsilon, d3, order)
    psi = module_basis(params, epsilon, d3, rotated)
    m = len(phi)

    w = connection_matrix(params, psi, phi)
    pair_op = casimir(params, (order[1], order[2]))
    entries = materialize(pair_op, 3, d3, [el.poly for el in phi]).matrix.to_fractions()
    mus = [casimir_eigenvalue(params, el.label, 2) for el in psi]

    eff_params = ParameterSet.make([params.mu_of(o) for o in order])
    eff_eps = [epsilon[o - 1] for o in order]
    sd = spectral_data(eff_params, eff_eps, d3)
    rp = racah_parameters(eff_params, eff_eps, d3)
    polys = racah_recurrence_polys(rp, sd, m)

    report = Report()
    distinct = len(set(mus)) == len(mus)
    report.add(
        "distinct-spectrum",
        tuple(order),
        d3,
        distinct,
        None if distinct else f"repeated eigenvalues in {mus}",
    )
    if distinct:
        uppers = [entries[t - 1][t] for t in range(1, m)]
        for s in range(m):
            w0 = w.at(s, 0)
            report.add(
                "leading-connection-coefficient-nonzero",
                (s,),
                d3,
                w0 != 0,
            )
            if w0 == 0:
                continue
            shifted = mus[s] + rp.tau
            scale = Fraction(1)
            mismatch = None
            for k in range(m):
                if k:
                    scale *= uppers[k - 1]
                v_k = scale * w.at(s, k) / w0
                expected = polys[k].evaluate([shifted])
                if v_k != expected:
                    mismatch = f"k={k}: {v_k} != {expected}"
                    break
            report.add("monic-ratios-match-recurrence", (s,), d3, mismatch is None, mismatch)
            boundary = polys[m].evaluate([shifted])
            report.add(
                "recurrence-boundary-root",
                (s,),
                d3,
                boundary == 0,
                None if boundary == 0 else f"H_{m}({shifted}) = {boundary}",
            )
    return RankOneOverlap(w, entries, mus, sd, rp, report)
