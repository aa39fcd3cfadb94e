"""Bounded search for class fields with many rational places.

For a base curve F with N rational places the search runs over triples
(d, s, m): extension degree d, s rational places required to split, and m
rational places in the support of the modulus D.  A class field of degree
d has at most d*s + d_max*m rational places, where d_max is the largest
proper divisor of d, so a triple is only worth exploring up to the largest
genus at which that count could still beat the record table.  The genus
ceiling G bounds deg D, and for every D, every S and every index-d subgroup
above <S> the invariants are computed and reported as a Finding.

Runs are deterministic.  The cursor (curve, triple, D) is written to the
checkpoint after every completed modulus, and findings are appended to a
JSON-lines file, so an interrupted run resumes to the identical output.
"""

import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import curve as cv
from .invariants import (ConstantFieldExtension, InfiniteIndex, extensions_above,
                         full_invariants, subgroup_from_split_places)
from .notation import format_curve, format_divisor, format_place, parse_curve, parse_divisor, parse_place
from .rayclass import CertificateNotReached, NoSuitableFunction, build_ray_class_group
from .records import MissingEntry, RecordTable, max_points_cap, serre_upper

log = logging.getLogger(__name__)


class SanityViolation(ArithmeticError):
    """A finding exceeds a proven upper bound: a bug, never a discovery."""


@dataclass
class SearchConfig:
    q: int
    curves: list = field(default_factory=list)
    max_genus: int = 50
    ds_cap: Optional[int] = None
    max_conductor_degree: Optional[int] = None
    # places of degree above this never enter supp(D)
    max_place_degree: int = 2
    # optional restrictions (texts in the usual place notation / integer sets)
    support: Optional[list] = None
    s_values: Optional[tuple] = None
    d_values: Optional[tuple] = None
    gen_bound: Optional[int] = None
    fun_ceiling: int = 12
    workers: int = 1
    checkpoint: Optional[str] = None
    out: Optional[str] = None


@dataclass
class Finding:
    q: int
    curve: str
    D: str
    S: str
    d: int
    genus: int
    n_rational: int
    conductor: str
    old_interval: Optional[list]
    improved: bool
    meets_upper: bool = False

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line):
        return cls(**json.loads(line))


def d_max(d: int) -> int:
    """Largest proper divisor of d."""
    for k in range(2, math.isqrt(d) + 1):
        if d % k == 0:
            return d // k
    return 1


def is_prime(d: int) -> bool:
    return d >= 2 and d_max(d) == 1


def triple_schedule(N: int, ds_cap: int):
    """All (d, s, m) with d >= 2, 1 <= s <= N, 0 <= m <= N - s and d*s <= ds_cap."""
    out = []
    for s in range(1, N + 1):
        for d in range(2, ds_cap // s + 1):
            for m in range(0, N - s + 1):
                out.append((d, s, m))
    return sorted(out)


def genus_ceiling(q, d, s, m, records: RecordTable, max_genus: int):
    """Largest genus at which d*s + d_max*m rational places could beat the table.

    Genera without a table entry are never pruned.  Returns None when no
    genus up to max_genus is worth exploring.
    """
    best = d * s + d_max(d) * m
    for g in range(max_genus, 0, -1):
        try:
            iv = records.query(q, g)
        except MissingEntry:
            return g
        if iv.lower is None or best > iv.lower:
            return g
    return None


def conductor_degree_bound(d: int, G: int, g_F: int = 2) -> int:
    """Upper bound on deg D for a degree-d class field of genus <= G.

    For prime d every non-trivial character has conductor D, so
    2G - 2 = d(2g_F - 2) + (d - 1) deg D; for g_F = 2 this is
    deg D <= 2(G - 1 - d)/(d - 1).  For composite d the sum of character
    conductor degrees is still at least deg D, giving 2G - 2 - d(2g_F - 2).
    A negative result means no modulus is possible.
    """
    excess = 2 * G - 2 - d * (2 * g_F - 2)
    if excess < 0:
        return -1
    return excess // (d - 1) if is_prime(d) else excess


def _effective_divisors(places, B):
    """All effective divisors on `places` of degree <= B, ordered by (deg, support)."""
    by_degree = {t: [] for t in range(B + 1)}

    def rec(i, remaining, terms):
        if i == len(places):
            D = cv.Divisor(dict(terms))
            by_degree[D.degree].append(tuple(terms))
            return
        pl = places[i]
        for k in range(remaining // pl.degree + 1):
            rec(i + 1, remaining - k * pl.degree, terms + ([(pl, k)] if k else []))

    rec(0, B, [])
    for t in range(B + 1):
        for terms in sorted(by_degree[t], key=lambda ts: [(pl.sort_key(), k) for pl, k in ts]):
            yield cv.Divisor(dict(terms))


def enumerate_moduli(C, B, m, support=None, max_place_degree=2):
    """Effective D with deg D <= B and exactly m rational places in its support."""
    if B < 0:
        return
    if support is None:
        support = cv.places_up_to(C, min(B, max_place_degree)) if B > 0 else []
    support = sorted(set(support))
    for D in _effective_divisors(support, B):
        if sum(1 for pl in D.support if pl.degree == 1) == m:
            yield D


# ---------------------------------------------------------------- the search loop

def _check_finding(q, inv, n_split, m, records):
    try:
        upper = records.query(q, inv.genus).upper
    except MissingEntry:
        upper = serre_upper(q, inv.genus)
    if inv.n_rational > upper:
        raise SanityViolation(f"N={inv.n_rational} exceeds the upper bound {upper} at genus {inv.genus}")
    lo, hi = inv.d * n_split, inv.d * n_split + d_max(inv.d) * m
    if not lo <= inv.n_rational <= hi:
        raise SanityViolation(f"N={inv.n_rational} outside [{lo}, {hi}]")


def _process_modulus(task):
    """Work unit: all findings for one (curve, triple, D).  Runs in workers."""
    q, curve_text, D_text, (d, s, m), cfg, records_csv = task
    C = parse_curve(q, curve_text)
    D = parse_divisor(C, D_text)
    records = RecordTable.from_csv(records_csv)
    try:
        rcg = build_ray_class_group(C, D, gen_bound=cfg["gen_bound"], fun_ceiling=cfg["fun_ceiling"])
    except (CertificateNotReached, NoSuitableFunction, cv.CurveError) as exc:
        return [], [{"curve": curve_text, "D": D_text, "triple": [d, s, m], "error": repr(exc)}]
    candidates = [pl for pl in cv.rational_places(C) if pl not in D.support]
    findings = []
    for S in itertools.combinations(candidates, s):
        try:
            base = subgroup_from_split_places(rcg, S)
        except (InfiniteIndex, ConstantFieldExtension):
            continue
        S_text = "{" + ", ".join(format_place(C, pl) for pl in S) + "}"
        for ext in extensions_above(base, d):
            inv = full_invariants(ext)
            if inv.genus > cfg["max_genus"]:
                continue
            n_split = sum(1 for r in inv.splitting if r.place.degree == 1 and r.e == 1 and r.f == 1)
            _check_finding(q, inv, n_split, m, records)
            try:
                iv = records.query(q, inv.genus)
                old = [iv.lower, iv.upper]
                improved = records.is_improvement(q, inv.genus, inv.n_rational)
                meets = records.meets_upper(q, inv.genus, inv.n_rational)
            except MissingEntry:
                old, improved, meets = None, False, inv.n_rational == serre_upper(q, inv.genus)
            findings.append(Finding(q, curve_text, D_text, S_text, inv.d, inv.genus, inv.n_rational,
                                    format_divisor(C, inv.conductor), old, improved, meets))
    return findings, []


def _tasks(config: SearchConfig, records: RecordTable):
    """Deterministic stream of (cursor, task) pairs."""
    cfg = {"gen_bound": config.gen_bound, "fun_ceiling": config.fun_ceiling,
           "max_genus": config.max_genus}
    records_csv = records.to_csv()
    ds_cap = config.ds_cap
    if ds_cap is None:
        ds_cap = max_points_cap(config.q, config.max_genus, records)
    for ci, curve_text in enumerate(config.curves):
        C = parse_curve(config.q, curve_text)
        canon = format_curve(C)
        support = None
        if config.support is not None:
            support = [parse_place(C, t) for t in config.support]
        N = len(cv.rational_places(C))
        for ti, (d, s, m) in enumerate(triple_schedule(N, ds_cap)):
            if config.s_values is not None and s not in config.s_values:
                continue
            if config.d_values is not None and d not in config.d_values:
                continue
            G = genus_ceiling(config.q, d, s, m, records, config.max_genus)
            if G is None:
                continue
            B = conductor_degree_bound(d, G, C.genus)
            if config.max_conductor_degree is not None:
                B = min(B, config.max_conductor_degree)
            for di, D in enumerate(enumerate_moduli(C, B, m, support, config.max_place_degree)):
                D_text = format_divisor(C, D)
                yield f"{ci}:{ti}:{di}", (config.q, canon, D_text, (d, s, m), cfg, records_csv)


def _read_checkpoint(path):
    if path and Path(path).exists():
        text = Path(path).read_text().strip()
        return text or None
    return None


def _cursor_key(cursor):
    return tuple(int(x) for x in cursor.split(":"))


def run_search(config: SearchConfig, records: Optional[RecordTable] = None,
               limit: Optional[int] = None):
    """Return (findings, skipped) for the configured run.

    Work resumes after the checkpointed cursor when one exists; `limit`
    stops after that many moduli (an interruption, for testing resume).
    """
    records = records or RecordTable.builtin()
    done = _read_checkpoint(config.checkpoint)
    seen = set()
    if done is not None and config.out and Path(config.out).exists():
        for line in Path(config.out).read_text().splitlines():
            if line.strip():
                f = Finding.from_json(line)
                seen.add((f.curve, f.genus, f.n_rational, f.conductor))
    tasks = [(c, t) for c, t in _tasks(config, records)
             if done is None or _cursor_key(c) > _cursor_key(done)]
    if limit is not None:
        tasks = tasks[:limit]
    findings, skipped = [], []
    out = open(config.out, "a") if config.out else None
    try:
        if config.workers > 1:
            pool = ProcessPoolExecutor(config.workers)
            results = pool.map(_process_modulus, [t for _, t in tasks])
        else:
            pool = None
            results = map(_process_modulus, [t for _, t in tasks])
        for (cursor, _), (found, skip) in zip(tasks, results):
            for f in found:
                key = (f.curve, f.genus, f.n_rational, f.conductor)
                if key in seen:
                    continue
                seen.add(key)
                findings.append(f)
                if out:
                    out.write(f.to_json() + "\n")
            for s in skip:
                log.warning("skipped %s", s)
            skipped.extend(skip)
            if out:
                out.flush()
            if config.checkpoint:
                Path(config.checkpoint).write_text(cursor + "\n")
        if pool:
            pool.shutdown()
    finally:
        if out:
            out.close()
    return findings, skipped


def search_curve(C, config: SearchConfig, records: Optional[RecordTable] = None):
    """Findings for a single curve under `config` (its curve list is ignored)."""
    cfg = SearchConfig(**{**asdict(config), "curves": [format_curve(C)], "q": C.q})
    return run_search(cfg, records)[0]
