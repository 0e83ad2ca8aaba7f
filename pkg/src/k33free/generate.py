"""Isomorph-free exhaustive generation of K3,3-free latin rectangles.

One level extends every main-class representative of K3,3-free m-by-n
rectangles by a row: candidate cells, a compatibility graph whose extra
clause kills every pair that would close a K3,3 with the existing rows,
and size-n cliques (one candidate per column) as the new rows.  Children
are deduplicated by main-level canonical form.

Each level is validated by counting all labeled rectangles two ways (from
parent orbits times raw extension counts, and from child orbits); any
disagreement raises.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import factorial
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from . import canon
from .core import CONJ_CL, CONJ_ID, LatinRectangle, LatinError, conjugate, validate
from .pattern import is_k33_free


class Candidate(NamedTuple):
    """A cell (new row, col) holding letter; candidate for the extension row."""

    col: int
    letter: int


@dataclass
class CompatibilityGraph:
    vertices: list[Candidate]
    adjacency: list[int]  # bitmask per vertex

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)


def candidates(s: LatinRectangle) -> list[Candidate]:
    """The (n-m)*n admissible cells for a new row: per column, its missing letters."""
    m, n = s.m, s.n
    if m >= n:
        raise LatinError("rectangle is already a square; nothing to extend")
    out = []
    for c in range(n):
        present = {s.rows[r][c] for r in range(m)}
        out.extend(Candidate(c, l) for l in range(n) if l not in present)
    return out


def compatibility_graph(s: LatinRectangle, cands: Sequence[Candidate]) -> CompatibilityGraph:
    """Edges: distinct columns, distinct letters, and no K3,3 closed with s.

    Two candidates (c', l'), (c'', l'') are incompatible when some column c
    holds l' in row r' and l'' in row r'' with s(r', c'') == s(r'', c').
    """
    m, n = s.m, s.n
    grid = s.rows
    row_of = [[-1] * n for _ in range(n)]  # row_of[c][l]
    for r in range(m):
        for c in range(n):
            row_of[c][grid[r][c]] = r
    nv = len(cands)
    adj = [0] * nv
    for i in range(nv):
        ci, li = cands[i]
        for j in range(i + 1, nv):
            cj, lj = cands[j]
            if ci == cj or li == lj:
                continue
            ok = True
            for c in range(n):
                rp = row_of[c][li]
                rq = row_of[c][lj]
                if rp >= 0 and rq >= 0 and grid[rp][cj] == grid[rq][ci]:
                    ok = False
                    break
            if ok:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatibilityGraph(list(cands), adj)


def cliques_of_size(g: CompatibilityGraph, size: int) -> list[tuple[Candidate, ...]]:
    """All cliques of exactly `size` vertices, in deterministic order.

    Vertices in a clique have pairwise distinct columns, so the search walks
    columns as an exact cover.
    """
    by_col: dict[int, list[int]] = {}
    for i, cand in enumerate(g.vertices):
        by_col.setdefault(cand.col, []).append(i)
    cols = sorted(by_col, key=lambda c: (len(by_col[c]), c))
    adj = g.adjacency
    out: list[tuple[Candidate, ...]] = []

    def rec(ci: int, chosen: list[int], mask: int):
        if len(chosen) == size:
            out.append(tuple(sorted(g.vertices[i] for i in chosen)))
            return
        if ci == len(cols) or len(chosen) + (len(cols) - ci) < size:
            return
        col = cols[ci]
        for i in by_col[col]:
            if mask >> i & 1:
                rec(ci + 1, chosen + [i], mask & adj[i])
        # clique may also skip this column entirely
        rec(ci + 1, chosen, mask)

    rec(0, [], (1 << len(g.vertices)) - 1)
    return sorted(set(out))


def extend_class(rep: LatinRectangle) -> list[LatinRectangle]:
    """All K3,3-free (m+1)-row extensions of a K3,3-free representative."""
    cands = candidates(rep)
    g = compatibility_graph(rep, cands)
    children = []
    for clique in cliques_of_size(g, rep.n):
        row = [0] * rep.n
        for c, l in clique:
            row[c] = l
        children.append(LatinRectangle(rep.rows + (tuple(row),)))
    return children


# ---------------------------------------------------------------------------
# level-by-level classification


@dataclass
class LevelStats:
    m: int
    main_classes: int
    isotopy_classes: int
    total_labeled: int
    raw_extensions: int  # cliques found while extending the previous level
    seconds: float


@dataclass
class ClassificationResult:
    m: int
    n: int
    representatives: list[LatinRectangle]
    main_class_count: int
    isotopy_class_count: int
    total_labeled_count: int
    levels: dict[int, LevelStats] = field(default_factory=dict)


class DoubleCountError(RuntimeError):
    """The two orbit-stabilizer totals disagree: internal inconsistency."""


def _derangements(n: int) -> int:
    d0, d1 = 1, 0
    for k in range(2, n + 1):
        d0, d1 = d1, (k - 1) * (d0 + d1)
    return d1 if n >= 1 else 1


#: skip stabilizer-orbit reduction of cliques above this group order
_STAB_ACTION_CAP = 768


def _act_on_clique(elem, clique: tuple[Candidate, ...]) -> tuple[Candidate, ...]:
    gamma, lam, swap = elem
    if swap:
        return tuple(sorted(Candidate(gamma[l], lam[c]) for c, l in clique))
    return tuple(sorted(Candidate(gamma[c], lam[l]) for c, l in clique))


def _process_parent(args) -> tuple[int, dict]:
    """Extend one parent representative; dedupe children by canonical form."""
    parent_rows, n = args
    parent = LatinRectangle(parent_rows)
    cands = candidates(parent)
    g = compatibility_graph(parent, cands)
    cliques = cliques_of_size(g, n)
    raw = len(cliques)

    _, stab_order, stab = canon.canonical_with_stabilizer(parent, "main")
    use_stab = 1 < stab_order <= _STAB_ACTION_CAP and len(stab) == stab_order
    if use_stab:
        elems = [
            (p.gamma, p.lam, p.conj != CONJ_ID)
            for p in stab
        ]
        seen: set[tuple[Candidate, ...]] = set()
        reduced = []
        for clique in cliques:
            key = min(_act_on_clique(e, clique) for e in elems)
            if key not in seen:
                seen.add(key)
                reduced.append(clique)
        cliques = reduced

    children: dict[tuple, int] = {}
    for clique in cliques:
        row = [0] * n
        for c, l in clique:
            row[c] = l
        child = LatinRectangle(parent_rows + (tuple(row),))
        form, order, _ = canon.canonical_with_stabilizer(child, "main")
        children.setdefault(form.rows, order)
    return raw, children


def _isotopy_class_count(rep: LatinRectangle) -> int:
    from .core import shape_preserving_conjs

    forms = set()
    for sigma in shape_preserving_conjs(rep.m, rep.n):
        forms.add(canon.canonical_form(conjugate(rep, sigma), "isotopy").rows)
    return len(forms)


def _two_row_reps(n: int) -> dict[tuple, int]:
    """Main classes of 2-by-n rectangles: one per cycle type (partition, parts >= 2)."""
    reps: dict[tuple, int] = {}

    def partitions(remaining: int, min_part: int, acc: tuple[int, ...]):
        if remaining == 0:
            row1 = canon._type_row(acc)
            rect = LatinRectangle((tuple(range(n)), row1))
            form, order, _ = canon.canonical_with_stabilizer(rect, "main")
            reps[form.rows] = order
            return
        for p in range(min_part, remaining + 1):
            if remaining - p != 1:
                partitions(remaining - p, p, acc + (p,))

    partitions(n, 2, ())
    return reps


def classify_column(
    n: int,
    m_max: int,
    jobs: int = 1,
    out_dir: str | Path | None = None,
    progress: bool = False,
) -> dict[int, ClassificationResult]:
    """Classify K3,3-free m-by-n rectangles for every m up to m_max.

    With ``out_dir`` set, finished levels are persisted and reloaded on a
    rerun (resume support for long columns).
    """
    if not (1 <= m_max <= n):
        raise ValueError("need 1 <= m_max <= n")
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)

    results: dict[int, ClassificationResult] = {}
    # level 1: single reduced row
    seed = LatinRectangle((tuple(range(n)),))
    level_reps: dict[tuple, int] = {
        seed.rows: factorial(n) * (2 if n > 1 else 6)
    }
    results[1] = _make_result(1, n, level_reps, raw=0, seconds=0.0)

    for m in range(2, m_max + 1):
        t0 = time.time()
        cached = _load_level(out_path, n, m)
        if cached is not None:
            level_reps, raw = cached
        elif m == 2:
            # second rows are exactly the derangements; classes are cycle types
            level_reps = _two_row_reps(n)
            raw = _derangements(n)
        else:
            parents = sorted(level_reps)
            tasks = [(rows, n) for rows in parents]
            merged: dict[tuple, int] = {}
            raw = 0
            lhs = 0
            if jobs > 1:
                with Pool(jobs) as pool:
                    outputs = pool.map(_process_parent, tasks, chunksize=1)
            else:
                outputs = [_process_parent(t) for t in tasks]
            for rows, (raw_p, children) in zip(parents, outputs):
                raw += raw_p
                lhs += (
                    canon.allowed_group_order(m - 1, n, "main")
                    // level_reps[rows]
                    * raw_p
                )
                for child_rows, order in children.items():
                    merged.setdefault(child_rows, order)
            level_reps = merged
            rhs = sum(
                canon.allowed_group_order(m, n, "main") // order
                for order in level_reps.values()
            )
            if lhs != rhs:
                raise DoubleCountError(
                    f"level {m}x{n}: parent-side total {lhs} != child-side total {rhs}"
                )
        if m == 2 and cached is None:
            # the same validation for the special-cased level
            lhs = factorial(n) * raw
            rhs = sum(
                canon.allowed_group_order(2, n, "main") // order
                for order in level_reps.values()
            )
            if lhs != rhs:
                raise DoubleCountError(
                    f"level 2x{n}: parent-side total {lhs} != child-side total {rhs}"
                )
        seconds = time.time() - t0
        _store_level(out_path, n, m, level_reps, raw)
        results[m] = _make_result(m, n, level_reps, raw, seconds)
        if progress:
            r = results[m]
            print(
                f"  level {m}x{n}: {r.main_class_count} main classes, "
                f"total {r.total_labeled_count} ({seconds:.1f}s)",
                flush=True,
            )
        if not level_reps:
            # nothing to extend; all higher levels are empty
            for mm in range(m + 1, m_max + 1):
                results[mm] = _make_result(mm, n, {}, raw=0, seconds=0.0)
            break
    return results


def _make_result(
    m: int, n: int, reps: dict[tuple, int], raw: int, seconds: float
) -> ClassificationResult:
    rep_rects = [LatinRectangle(rows) for rows in sorted(reps)]
    total = sum(
        canon.allowed_group_order(m, n, "main") // order for order in reps.values()
    )
    iso = sum(_isotopy_class_count(r) for r in rep_rects)
    res = ClassificationResult(
        m=m,
        n=n,
        representatives=rep_rects,
        main_class_count=len(rep_rects),
        isotopy_class_count=iso,
        total_labeled_count=total,
    )
    res.levels[m] = LevelStats(m, len(rep_rects), iso, total, raw, seconds)
    return res


def classify_all(m: int, n: int, jobs: int = 1, out_dir=None, progress=False) -> ClassificationResult:
    """Classification for one shape; see classify_column."""
    column = classify_column(n, m, jobs=jobs, out_dir=out_dir, progress=progress)
    result = column[m]
    for mm, res in column.items():
        result.levels[mm] = res.levels[mm]
    return result


# -- level persistence -------------------------------------------------------


def _level_file(out_path: Path, n: int, m: int) -> Path:
    return out_path / f"level_{m}x{n}.json"


def _store_level(out_path, n, m, reps: dict[tuple, int], raw: int) -> None:
    if out_path is None:
        return
    payload = {
        "m": m,
        "n": n,
        "raw_extensions": raw,
        "classes": [
            {"rows": [list(r) for r in rows], "stab_order": order}
            for rows, order in sorted(reps.items())
        ],
    }
    tmp = _level_file(out_path, n, m).with_suffix(".tmp")
    tmp.write_text(json.dumps(payload))
    tmp.rename(_level_file(out_path, n, m))


def _load_level(out_path, n, m):
    if out_path is None:
        return None
    f = _level_file(out_path, n, m)
    if not f.exists():
        return None
    payload = json.loads(f.read_text())
    reps = {
        tuple(tuple(r) for r in entry["rows"]): entry["stab_order"]
        for entry in payload["classes"]
    }
    return reps, payload["raw_extensions"]
