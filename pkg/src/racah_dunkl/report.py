"""Result records for identity-verification sweeps.

Every verification suite produces a Report: a flat list of per-identity
check results.  A result names the relation, the index tuple it was
instantiated with, the polynomial degree of the test space, a status, and
(on failure) the first witnessing discrepancy as a serialized polynomial.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

THREADS_ENV_VAR = "RACAH_DUNKL_THREADS"


@dataclass(frozen=True)
class CheckResult:
    relation: str
    index_tuple: tuple
    degree: int
    status: str  # "ok" or "fail"
    first_discrepancy: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json_obj(self) -> dict:
        obj = {
            "relation": self.relation,
            "index_tuple": list(self.index_tuple),
            "degree": self.degree,
            "status": self.status,
        }
        if self.first_discrepancy is not None:
            obj["first_discrepancy_polynomial"] = self.first_discrepancy
        return obj


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    def add(
        self,
        relation: str,
        index_tuple: tuple,
        degree: int,
        ok: bool,
        discrepancy: str | None = None,
    ) -> None:
        self.results.append(
            CheckResult(
                relation=relation,
                index_tuple=tuple(index_tuple),
                degree=degree,
                status="ok" if ok else "fail",
                first_discrepancy=None if ok else discrepancy,
            )
        )

    def extend(self, other: "Report") -> None:
        self.results.extend(other.results)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def __len__(self) -> int:
        return len(self.results)

    def __iter__(self):
        return iter(self.results)

    def to_json_obj(self) -> list[dict]:
        return [r.to_json_obj() for r in self.results]


def thread_count() -> int:
    """Parallelism cap from the environment; defaults to sequential."""
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """Apply fn to items, optionally on a thread pool, preserving input order.

    Used by the verification sweeps so results merge deterministically no
    matter how many worker threads are configured.
    """
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
