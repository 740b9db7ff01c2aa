"""Grid sweep: run the decision procedure over a box of inputs.

Cells are enumerated in lexicographic order of (r, s, d, gamma, delta, mu),
skipping parameter combinations that do not define valid input data.  Rows
come out in exactly that order regardless of the number of worker threads,
so two scans of the same box are byte-identical.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Optional

from . import jsonio
from .arith import invariants
from .decide import DecisionInput, decide
from .errors import K3IsoError
from .lattice import PolarizedLattice

COLUMNS = (
    "r",
    "s",
    "d",
    "n_half",
    "gamma",
    "delta",
    "mu",
    "verdict",
    "series",
    "sign",
    "d2",
    "witness_x",
    "witness_y",
    "reason",
    "attempts",
    "candidate_forms",
    "walk_points",
)


@dataclass(frozen=True)
class ScanSpec:
    r_max: int
    s_max: int
    d_max: int = 1
    max_gamma_delta: int = 120
    max_n_half: Optional[int] = None
    full_picard_general: bool = False
    series: Optional[str] = None
    jobs: int = 1


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def iter_cells(
    spec: ScanSpec,
) -> Iterator[tuple[int, int, int, PolarizedLattice]]:
    for r in range(1, spec.r_max + 1):
        for s in range(1, spec.s_max + 1):
            for d in range(1, spec.d_max + 1):
                try:
                    inv = invariants(r, s, d)
                except K3IsoError:
                    continue
                if spec.max_n_half is not None and inv.n_half > spec.max_n_half:
                    continue
                two_n = 2 * inv.n_half
                for gamma in _divisors(two_n):
                    big_m = two_n // gamma
                    cells = []
                    for mu in range(0, big_m // 2 + 1):
                        if gcd(mu, big_m) != 1:
                            continue
                        base = (mu * mu * gamma) % (2 * big_m)
                        delta = base if base else 2 * big_m
                        while gamma * delta <= spec.max_gamma_delta:
                            cells.append((delta, mu))
                            delta += 2 * big_m
                    for delta, mu in sorted(cells):
                        yield r, s, d, PolarizedLattice(inv.n_half, gamma, delta, mu)


def _blank_row(r: int, s: int, d: int, lat: PolarizedLattice) -> dict:
    row = dict.fromkeys(COLUMNS, None)
    row.update(
        r=r,
        s=s,
        d=d,
        n_half=lat.n_half,
        gamma=lat.gamma,
        delta=lat.delta,
        mu=lat.mu,
        reason="",
        attempts=0,
        candidate_forms=0,
        walk_points=0,
    )
    return row


def cell_row(
    r: int, s: int, d: int, lat: PolarizedLattice, spec: ScanSpec
) -> dict:
    row = _blank_row(r, s, d, lat)
    try:
        verdict = decide(
            DecisionInput(r, s, d, lat, spec.full_picard_general),
            series_filter=spec.series,
        )
    except K3IsoError as exc:
        row["verdict"] = "error"
        row["reason"] = f"{type(exc).__name__}: {exc}"
        return row
    row["verdict"] = verdict.kind
    row["reason"] = verdict.reason
    for key in ("attempts", "candidate_forms", "walk_points"):
        row[key] = verdict.stats.get(key, 0)
    cert = verdict.certificate
    if cert is not None:
        row["series"] = cert.series
        row["sign"] = cert.sign
        row["d2"] = cert.d2
        row["witness_x"] = cert.witness.x
        row["witness_y"] = cert.witness.y
    return row


def scan_rows(spec: ScanSpec) -> Iterator[dict]:
    cells = iter_cells(spec)
    if spec.jobs <= 1:
        for r, s, d, lat in cells:
            yield cell_row(r, s, d, lat, spec)
        return
    with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
        # Executor.map preserves input order, so parallel output is stable.
        yield from pool.map(lambda cell: cell_row(*cell, spec), cells)


def to_csv_lines(rows: Iterable[dict]) -> Iterator[str]:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="")

    def line(values) -> str:
        buf.seek(0)
        buf.truncate()
        writer.writerow(values)
        return buf.getvalue() + "\n"

    yield line(COLUMNS)
    for row in rows:
        yield line(
            ["" if row[col] is None else str(row[col]) for col in COLUMNS]
        )


def to_json_lines(rows: Iterable[dict]) -> Iterator[str]:
    for row in rows:
        yield jsonio.dumps({col: row[col] for col in COLUMNS}) + "\n"


def render(spec: ScanSpec, fmt: str = "csv") -> Iterator[str]:
    rows = scan_rows(spec)
    if fmt == "csv":
        return to_csv_lines(rows)
    if fmt == "json":
        return to_json_lines(rows)
    raise ValueError(f"unknown scan format {fmt!r}")
