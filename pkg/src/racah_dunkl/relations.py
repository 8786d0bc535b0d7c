"""Exhaustive verification of the symmetry-algebra identities.

Every check here materializes both sides of an operator identity on the
monomial basis of a homogeneous degree and compares the resulting exact
matrices (or, for operators that change degree, compares images of every
basis monomial directly).  A sweep returns a Report; a failing entry
carries the first discrepancy as a serialized polynomial witness.

The quadratic-algebra sweeps cache the pair invariants and their
commutators as integer-scaled matrices, since the same generators appear
in many instantiated relations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from .linalg import RationalMatrix
from .operators import (
    angular,
    casimir,
    laplace,
    materialize_on_monomials,
    normalize_subset,
    su11_triple,
)
from .poly import ParameterSet, Polynomial, monomial_basis
from .report import Report, ordered_map

# Degree bounds keeping full relation sweeps in seconds-to-minutes.
_DEFAULT_BOUNDS = {3: 6, 4: 4, 5: 3, 6: 3}


def default_degree_bound(n: int) -> int:
    return _DEFAULT_BOUNDS.get(n, 2)


def nonempty_subsets(n: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for size in range(1, n + 1):
        out.extend(combinations(range(1, n + 1), size))
    return out


class RelationWorkspace:
    """Cached exact matrices of the algebra generators on one degree."""

    def __init__(self, params: ParameterSet, k: int):
        self.params = params
        self.k = k
        self.n = params.n
        self.basis = monomial_basis(self.n, k)
        self.dim = len(self.basis)

        n = self.n
        self.reflect_sign = {
            i: [1 if exps[i - 1] % 2 == 0 else -1 for exps in self.basis]
            for i in range(1, n + 1)
        }
        # closed form of the one-index invariant: 1/4 (mu^2 - mu r - 3/4)
        self.c1_diag = {}
        for i in range(1, n + 1):
            mu = params.mu_of(i)
            even = (mu * mu - mu - Fraction(3, 4)) / 4
            odd = (mu * mu + mu - Fraction(3, 4)) / 4
            self.c1_diag[i] = [
                even if s == 1 else odd for s in self.reflect_sign[i]
            ]

        self.c_pair: dict[frozenset, RationalMatrix] = {}
        self.p_mat: dict[frozenset, RationalMatrix] = {}
        self.l_mat: dict[tuple[int, int], RationalMatrix] = {}
        self.l2_mat: dict[frozenset, RationalMatrix] = {}
        self.f_mat: dict[tuple[int, int, int], RationalMatrix] = {}

        for i, j in combinations(range(1, n + 1), 2):
            key = frozenset((i, j))
            cij = materialize_on_monomials(casimir(params, (i, j)), n, k)
            self.c_pair[key] = cij
            diag = [
                a + b for a, b in zip(self.c1_diag[i], self.c1_diag[j])
            ]
            self.p_mat[key] = cij - RationalMatrix.diagonal(diag)
            lij = materialize_on_monomials(angular(params, i, j), n, k)
            self.l_mat[(i, j)] = lij
            self.l_mat[(j, i)] = -lij
            self.l2_mat[key] = lij * lij

        for i, j, m in permutations(range(1, n + 1), 3):
            pij = self.p_mat[frozenset((i, j))]
            pjm = self.p_mat[frozenset((j, m))]
            self.f_mat[(i, j, m)] = (pij.commutator(pjm)).scale(Fraction(1, 2))

    def c1(self, i: int) -> list[Fraction]:
        return self.c1_diag[i]

    def cp(self, i: int, j: int) -> RationalMatrix:
        return self.c_pair[frozenset((i, j))]

    def p(self, i: int, j: int) -> RationalMatrix:
        return self.p_mat[frozenset((i, j))]

    def f(self, i: int, j: int, m: int) -> RationalMatrix:
        return self.f_mat[(i, j, m)]

    def record(
        self, report: Report, relation: str, idx: tuple, diff: RationalMatrix
    ) -> None:
        _record_matrix_check(report, relation, idx, self.k, self.n, self.basis, diff)


def _matrix_witness(n: int, basis, diff: RationalMatrix) -> str | None:
    """First nonzero column of a discrepancy matrix, as a polynomial."""
    col = diff.first_nonzero_column()
    if col is None:
        return None
    terms = {
        basis[i]: diff.at(i, col)
        for i in range(len(basis))
        if diff.rows[i][col] != 0
    }
    return Polynomial(n, terms).to_text()


def _record_matrix_check(
    report: Report,
    relation: str,
    idx: tuple,
    k: int,
    n: int,
    basis,
    diff: RationalMatrix,
) -> None:
    ok = diff.is_zero
    report.add(relation, idx, k, ok, None if ok else _matrix_witness(n, basis, diff))


def verify_su11(params: ParameterSet, kmax: int, subsets=None) -> Report:
    """Bracket identities of the raising/lowering triple, on all degrees <= kmax.

    For each subset A the three identities [A0, J+] = J+, [A0, J-] = -J-
    and [J-, J+] = 2 A0 are applied to every monomial of every degree.
    """
    n = params.n
    if subsets is None:
        subsets = nonempty_subsets(n)
    report = Report()

    def run(A: tuple[int, ...]) -> Report:
        local = Report()
        a0, jp, jm = su11_triple(params, A)
        checks = (
            ("su11-raising", lambda p: a0(jp(p)) - jp(a0(p)) - jp(p)),
            ("su11-lowering", lambda p: a0(jm(p)) - jm(a0(p)) + jm(p)),
            ("su11-bracket", lambda p: jm(jp(p)) - jp(jm(p)) - a0(p).scale(2)),
        )
        for k in range(kmax + 1):
            for relation, diff_fn in checks:
                witness = None
                for exps in monomial_basis(n, k):
                    diff = diff_fn(Polynomial.monomial(n, exps))
                    if not diff.is_zero:
                        witness = diff.to_text()
                        break
                local.add(relation, tuple(A), k, witness is None, witness)
        return local

    for sub_report in ordered_map(run, subsets):
        report.extend(sub_report)
    return report


def verify_racah_relations(
    params: ParameterSet,
    kmax: int | None = None,
    include_drinfeld_kohno: bool = True,
) -> Report:
    """Full sweep of the quadratic-algebra relations on degrees <= kmax.

    Covers, for every admissible tuple of distinct indices:

    * the commutator [P_ij, P_jk] against the independent angular-momentum
      expansion of F_ijk, plus the antisymmetry F_kji = -F_ijk;
    * [P_jk, F_ijk] = P_ik P_jk - P_jk P_ij + 2 P_ik C_j - 2 P_ij C_k;
    * [P_kl, F_ijk] = P_ik P_jl - P_il P_jk            (needs n >= 4);
    * [F_ijk, F_jkl] = F_jkl P_ij - F_ikl (P_jk + 2 C_j) - F_ijk P_jl;
    * [F_ijk, F_klm] = F_ilm P_jk - P_ik F_jlm         (needs n >= 5);

    together with the closed forms of the one- and two-index invariants,
    the subset additivity of the invariants, and (optionally) the
    commutativity pattern of the two-index invariants.
    """
    n = params.n
    if n < 3:
        raise ValueError("the relation sweep needs at least three coordinates")
    if kmax is None:
        kmax = default_degree_bound(n)
    report = Report()
    for k in range(kmax + 1):
        ws = RelationWorkspace(params, k)
        _check_single_invariant_form(ws, report)
        _check_pair_invariant_form(ws, report)
        _check_subset_additivity(ws, report)
        _check_f_from_angular(ws, report)
        _check_triple_relation(ws, report)
        if n >= 4:
            _check_quad_pf_relation(ws, report)
            _check_quad_ff_relation(ws, report)
        if n >= 5:
            _check_quint_ff_relation(ws, report)
        if include_drinfeld_kohno:
            _drinfeld_kohno_on_workspace(ws, report)
    return report


def _check_single_invariant_form(ws: RelationWorkspace, report: Report) -> None:
    # generic quadratic invariant of one index vs its reflection closed form
    for i in range(1, ws.n + 1):
        ci = materialize_on_monomials(casimir(ws.params, (i,)), ws.n, ws.k)
        diff = ci - RationalMatrix.diagonal(ws.c1(i))
        ws.record(report, "single-invariant-closed-form", (i,), diff)


def _check_pair_invariant_form(ws: RelationWorkspace, report: Report) -> None:
    # 4 C_ij + L_ij^2 - (mu_i r_i + mu_j r_j)^2 + 1 = 0
    params = ws.params
    for i, j in combinations(range(1, ws.n + 1), 2):
        mu_i, mu_j = params.mu_of(i), params.mu_of(j)
        square_diag = [
            mu_i * mu_i + mu_j * mu_j + 2 * mu_i * mu_j * si * sj
            for si, sj in zip(ws.reflect_sign[i], ws.reflect_sign[j])
        ]
        diff = (
            ws.cp(i, j).scale(4)
            + ws.l2_mat[frozenset((i, j))]
            - RationalMatrix.diagonal(square_diag)
            + RationalMatrix.identity(ws.dim)
        )
        ws.record(report, "pair-invariant-angular-form", (i, j), diff)


def _check_subset_additivity(ws: RelationWorkspace, report: Report) -> None:
    # C_A = sum of pair invariants minus (|A| - 2) * sum of single invariants
    for size in range(3, ws.n + 1):
        for A in combinations(range(1, ws.n + 1), size):
            ca = materialize_on_monomials(casimir(ws.params, A), ws.n, ws.k)
            total = RationalMatrix.zeros(ws.dim, ws.dim)
            for i, j in combinations(A, 2):
                total = total + ws.cp(i, j)
            singles = [Fraction(0)] * ws.dim
            for i in A:
                singles = [a + b for a, b in zip(singles, ws.c1(i))]
            total = total - RationalMatrix.diagonal(singles).scale(size - 2)
            ws.record(report, "subset-additivity", A, ca - total)


def _check_f_from_angular(ws: RelationWorkspace, report: Report) -> None:
    params = ws.params
    triples = [t for t in permutations(range(1, ws.n + 1), 3) if t[0] < t[2]]

    def run(idx: tuple[int, int, int]):
        i, j, m = idx
        mu_i, mu_j, mu_m = (params.mu_of(t) for t in (i, j, m))
        one = RationalMatrix.identity(ws.dim)

        def refl_factor(mu: Fraction, t: int) -> RationalMatrix:
            return one + RationalMatrix.diagonal(
                [mu * 2 * s for s in ws.reflect_sign[t]]
            )

        f_angular = (
            ws.l2_mat[frozenset((i, j))] * refl_factor(mu_m, m)
            - ws.l2_mat[frozenset((i, m))] * refl_factor(mu_j, j)
            - ws.l2_mat[frozenset((j, m))] * refl_factor(mu_i, i)
            + (ws.l_mat[(i, m)] * ws.l_mat[(i, j)] * ws.l_mat[(j, m)]).scale(2)
        ).scale(Fraction(1, 16))
        diff_def = ws.f(i, j, m) - f_angular
        diff_anti = ws.f(m, j, i) + ws.f(i, j, m)
        return idx, diff_def, diff_anti

    for idx, diff_def, diff_anti in ordered_map(run, triples):
        ws.record(report, "f-from-angular-momentum", idx, diff_def)
        ws.record(report, "f-antisymmetry", idx, diff_anti)


def _check_triple_relation(ws: RelationWorkspace, report: Report) -> None:
    triples = list(permutations(range(1, ws.n + 1), 3))

    def run(idx: tuple[int, int, int]):
        i, j, m = idx
        f_ijm = ws.f(i, j, m)
        p_jm = ws.p(j, m)
        lhs = p_jm.commutator(f_ijm)
        rhs = (
            ws.p(i, m) * p_jm
            - p_jm * ws.p(i, j)
            + ws.p(i, m).mul_diag_right(ws.c1(j)).scale(2)
            - ws.p(i, j).mul_diag_right(ws.c1(m)).scale(2)
        )
        return idx, lhs - rhs

    for idx, diff in ordered_map(run, triples):
        ws.record(report, "triple-relation", idx, diff)


def _check_quad_pf_relation(ws: RelationWorkspace, report: Report) -> None:
    quads = list(permutations(range(1, ws.n + 1), 4))

    def run(idx: tuple[int, int, int, int]):
        i, j, m, l = idx
        lhs = ws.p(m, l).commutator(ws.f(i, j, m))
        rhs = ws.p(i, m) * ws.p(j, l) - ws.p(i, l) * ws.p(j, m)
        return idx, lhs - rhs

    for idx, diff in ordered_map(run, quads):
        ws.record(report, "quad-pf-relation", idx, diff)


def _check_quad_ff_relation(ws: RelationWorkspace, report: Report) -> None:
    quads = list(permutations(range(1, ws.n + 1), 4))

    def run(idx: tuple[int, int, int, int]):
        i, j, m, l = idx
        lhs = ws.f(i, j, m).commutator(ws.f(j, m, l))
        middle = ws.p(j, m) + RationalMatrix.diagonal(ws.c1(j)).scale(2)
        rhs = (
            ws.f(j, m, l) * ws.p(i, j)
            - ws.f(i, m, l) * middle
            - ws.f(i, j, m) * ws.p(j, l)
        )
        return idx, lhs - rhs

    for idx, diff in ordered_map(run, quads):
        ws.record(report, "quad-ff-relation", idx, diff)


def _check_quint_ff_relation(ws: RelationWorkspace, report: Report) -> None:
    quints = list(permutations(range(1, ws.n + 1), 5))

    def run(idx: tuple[int, int, int, int, int]):
        i, j, m, l, q = idx
        lhs = ws.f(i, j, m).commutator(ws.f(m, l, q))
        rhs = ws.f(i, l, q) * ws.p(j, m) - ws.p(i, m) * ws.f(j, l, q)
        return idx, lhs - rhs

    for idx, diff in ordered_map(run, quints):
        ws.record(report, "quint-ff-relation", idx, diff)


def _drinfeld_kohno_on_workspace(ws: RelationWorkspace, report: Report) -> None:
    n = ws.n
    if n >= 4:
        for i, j in combinations(range(1, n + 1), 2):
            for m, l in combinations(range(1, n + 1), 2):
                if (i, j) < (m, l) and not {i, j} & {m, l}:
                    diff = ws.cp(i, j).commutator(ws.cp(m, l))
                    ws.record(report, "disjoint-pairs-commute", (i, j, m, l), diff)
    for i, j in combinations(range(1, n + 1), 2):
        for m in range(1, n + 1):
            if m in (i, j):
                continue
            diff = ws.cp(i, j).commutator(ws.cp(i, m) + ws.cp(j, m))
            ws.record(report, "adjacent-pair-sum-commutes", (i, j, m), diff)


def verify_drinfeld_kohno(params: ParameterSet, kmax: int) -> Report:
    """Commutativity pattern of the two-index invariants, as a standalone sweep."""
    report = Report()
    for k in range(kmax + 1):
        ws = RelationWorkspace(params, k)
        _drinfeld_kohno_on_workspace(ws, report)
    return report


def verify_casimir_laplacian_commute(params: ParameterSet, kmax: int) -> Report:
    """[C_A, Lap] = 0 for every nonempty A, checked on every monomial.

    The full Laplacian lowers degree by two, so this check applies both
    orders of composition to each monomial instead of using matrices.
    """
    n = params.n
    lap = laplace(params, range(1, n + 1))
    report = Report()

    def run(A: tuple[int, ...]) -> Report:
        local = Report()
        ca = casimir(params, A)
        for k in range(kmax + 1):
            witness = None
            for exps in monomial_basis(n, k):
                p = Polynomial.monomial(n, exps)
                diff = ca(lap(p)) - lap(ca(p))
                if not diff.is_zero:
                    witness = diff.to_text()
                    break
            local.add("invariant-commutes-with-laplacian", tuple(A), k, witness is None, witness)
        return local

    for sub in ordered_map(run, nonempty_subsets(n)):
        report.extend(sub)
    return report


def verify_nested_disjoint_commute(params: ParameterSet, kmax: int) -> Report:
    """[C_A, C_B] = 0 whenever A and B are nested or disjoint."""
    n = params.n
    subsets = nonempty_subsets(n)
    report = Report()
    for k in range(kmax + 1):
        basis = monomial_basis(n, k)
        mats = {
            A: materialize_on_monomials(casimir(params, A), n, k) for A in subsets
        }
        for a_idx, A in enumerate(subsets):
            for B in subsets[a_idx + 1:]:
                sa, sb = set(A), set(B)
                if sa <= sb or sb <= sa:
                    relation = "nested-invariants-commute"
                elif not (sa & sb):
                    relation = "disjoint-invariants-commute"
                else:
                    continue
                diff = mats[A].commutator(mats[B])
                _record_matrix_check(report, relation, (A, B), k, n, basis, diff)
    return report


def verify_embedding(
    params: ParameterSet,
    K: tuple[int, ...],
    L: tuple[int, ...],
    M: tuple[int, ...],
    kmax: int,
) -> Report:
    """Rank-one subalgebra relations among invariants of three disjoint blocks.

    For pairwise disjoint K, L, M the operators attached to the pairwise
    unions generate a copy of the three-index algebra: the union invariant
    decomposes additively, the three cyclic commutators agree, and the
    three equitable-form relations hold.
    """
    n = params.n
    K = normalize_subset(K, n)
    L = normalize_subset(L, n)
    M = normalize_subset(M, n)
    if set(K) & set(L) or set(K) & set(M) or set(L) & set(M):
        raise ValueError("blocks K, L, M must be pairwise disjoint")

    report = Report()
    idx = (K, L, M)
    for k in range(kmax + 1):
        basis = monomial_basis(n, k)

        def check(relation: str, diff: RationalMatrix) -> None:
            _record_matrix_check(report, relation, idx, k, n, basis, diff)

        def mat(subset: tuple[int, ...]) -> RationalMatrix:
            return materialize_on_monomials(casimir(params, subset), n, k)

        c_k, c_l, c_m = mat(K), mat(L), mat(M)
        c_kl = mat(tuple(sorted(K + L)))
        c_km = mat(tuple(sorted(K + M)))
        c_lm = mat(tuple(sorted(L + M)))
        c_klm = mat(tuple(sorted(K + L + M)))

        check(
            "embedding-additivity",
            c_klm - (c_kl + c_km + c_lm - c_k - c_l - c_m),
        )

        two_f = c_kl.commutator(c_lm)
        check("embedding-f-consistency-1", two_f - c_km.commutator(c_kl))
        check("embedding-f-consistency-2", two_f - c_lm.commutator(c_km))

        f = two_f.scale(Fraction(1, 2))
        check(
            "embedding-equitable-1",
            c_kl.commutator(f)
            - (c_lm * c_kl - c_kl * c_km + (c_l - c_k) * (c_m - c_klm)),
        )
        check(
            "embedding-equitable-2",
            c_lm.commutator(f)
            - (c_km * c_lm - c_lm * c_kl + (c_m - c_l) * (c_k - c_klm)),
        )
        check(
            "embedding-equitable-3",
            c_km.commutator(f)
            - (c_kl * c_km - c_km * c_lm + (c_k - c_m) * (c_l - c_klm)),
        )
    return report
