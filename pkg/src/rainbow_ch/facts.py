"""Sampled checks of the inequality facts about h, f and q1.

Tuples are drawn with numpy and every inequality is compared in int64 after
clearing denominators, so there is no rounding anywhere.  Samples are cut
into fixed-size chunks, each with its own seed stream, which keeps results
independent of the worker count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .formulas import e1, poly_f, poly_h, poly_q1

FACTS = ("2.2a", "2.2b", "2.3", "4.1", "4.2", "4.2-moreover")
LARGE_N = 3000
CHUNK = 1 << 16


def t_limit(n):
    """Largest integer t with t <= (2n-6)/9 - 2."""
    return (2 * n - 24) // 9


def _uniform(rng, lo, hi):
    """One integer per row, uniform on [lo, hi] (arrays, hi >= lo)."""
    return lo + np.floor(rng.random(len(lo)) * (hi - lo + 1)).astype(np.int64)


def _sample_22(rng, size, n_lo, n_hi):
    # positive n, t, m, i with 2m + i = n - 3(t+1)
    n = rng.integers(n_lo, n_hi + 1, size=size, dtype=np.int64)
    t = _uniform(rng, np.ones(size, np.int64), t_limit(n))
    x = n - 3 * (t + 1)
    m = _uniform(rng, np.ones(size, np.int64), (x - 1) // 2)
    i = x - 2 * m
    return {"n": n, "t": t, "m": m, "i": i}


def _split3(rng, total):
    """Uniform-ish split of ``total`` into three non-negative parts."""
    a = _uniform(rng, np.zeros_like(total), total)
    b = _uniform(rng, np.zeros_like(total), total - a)
    c = total - a - b
    order = rng.permuted(np.stack([a, b, c], axis=1), axis=1)
    return order[:, 0], order[:, 1], order[:, 2]


def _sample_23(rng, size, n_lo, n_hi):
    # any non-negative stats with 3(t1+..+t4) + 2m + i = n; a quarter with t1*t2 = 0
    n = rng.integers(n_lo, n_hi + 1, size=size, dtype=np.int64)
    tri = _uniform(rng, np.zeros(size, np.int64), n // 3)
    t1 = _uniform(rng, np.zeros(size, np.int64), tri)
    t2, t3, t4 = _split3(rng, tri - t1)
    zero = rng.random(size) < 0.25
    t2 = np.where(zero, t2 + t1, t2)
    t1 = np.where(zero, 0, t1)
    r = n - 3 * tri
    m = _uniform(rng, np.zeros(size, np.int64), r // 2)
    return {"n": n, "t1": t1, "t2": t2, "t3": t3, "t4": t4, "m": m, "i": r - 2 * m}


def _sample_4x(rng, size, n_lo, n_hi, *, some_outside_t1=False):
    # stability windows: t1 in [t-1, t+1], sum t_j = t+1, i < sqrt(2n), 2m + i = n - 3(t+1)
    n = rng.integers(n_lo, n_hi + 1, size=size, dtype=np.int64)
    t = _uniform(rng, np.ones(size, np.int64), t_limit(n))
    t1 = t - 1 + rng.integers(0, 2 if some_outside_t1 else 3, size=size)
    t2, t3, t4 = _split3(rng, t + 1 - t1)
    x = n - 3 * (t + 1)
    i_max = np.floor(np.sqrt(2 * n - 1)).astype(np.int64)
    while True:  # guard the float sqrt: want the largest i with i*i < 2n
        hi = (i_max + 1) ** 2 < 2 * n
        lo = i_max ** 2 >= 2 * n
        if not (hi.any() or lo.any()):
            break
        i_max = i_max + hi - lo
    # i must have the parity of x and stay <= x
    top = np.minimum(i_max, x)
    top = top - ((top - x) % 2)
    i = top - 2 * _uniform(rng, np.zeros(size, np.int64), top // 2)
    m = (x - i) // 2
    return {"n": n, "t": t, "t1": t1, "t2": t2, "t3": t3, "t4": t4, "m": m, "i": i}


def _stats(d):
    return (d["t1"], d["t2"], d["t3"], d["t4"], d["m"], d["i"])


def _check(fact, d):
    """``(lhs, rhs, scale)`` arrays; the fact holds where lhs <= rhs.

    Both sides are multiplied by ``scale`` to stay integral.
    """
    n = d["n"]
    if fact in ("2.2a", "2.2b"):
        t, m, i = d["t"], d["m"], d["i"]
        z = np.zeros_like(t)
        base = e1(n, t)
        if fact == "2.2a":
            h = poly_h((z, t + 1, z, z, m, i))
            return 36 * h, 36 * base - 4 * n - 147, 36
        h = poly_h((t + 1, z, z, z, m, i))
        return 4 * h, 4 * base - i * i + 2 * n - 2 * t - 2, 4
    if fact == "4.1":
        return 4 * poly_q1(_stats(d)), 4 * e1(n, d["t"]) + 1, 4
    if fact == "4.2":
        t = d["t"]
        return 2 * poly_h(_stats(d)), 2 * e1(n, t) + n - t - 1, 2
    if fact == "4.2-moreover":
        t = d["t"]
        return poly_h(_stats(d)), e1(n, t) + t + 6, 1
    raise ValueError(fact)


def _check_23(d):
    """Max inequality, strictness when t1*t2 > 0, and the T3-into-T4 move for h."""
    t1, t2, t3, t4, m, i = _stats(d)
    z = np.zeros_like(t1)
    f = poly_f((t1, t2, t3, t4, m, i))
    cap = np.maximum(poly_f((t1 + t2, z, t3, t4, m, i)), poly_f((z, t1 + t2, t3, t4, m, i)))
    both = (t1 * t2) > 0
    ok_max = np.where(both, f < cap, f <= cap)
    h = poly_h((t1, t2, t3, t4, m, i))
    h_moved = poly_h((t1, t2, z, t3 + t4, m, i))
    return ok_max & (h <= h_moved), f, cap, h, h_moved


SAMPLERS = {"2.2a": _sample_22, "2.2b": _sample_22, "2.3": _sample_23,
            "4.1": _sample_4x, "4.2": _sample_4x,
            "4.2-moreover": lambda *a: _sample_4x(*a, some_outside_t1=True)}


@dataclass
class FactReport:
    fact: str
    n_range: tuple[int, int]
    samples: int
    seed: int
    checked: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)
    informational: bool = False  # below the large-n threshold: violations do not fail

    @property
    def ok(self) -> bool:
        return self.violations == 0 or self.informational

    def to_json(self) -> dict:
        return {
            "fact": self.fact, "n_range": list(self.n_range), "samples": self.samples,
            "seed": self.seed, "checked": self.checked, "violations": self.violations,
            "informational": self.informational, "witnesses": self.witnesses,
        }


def _record(fact, d, k, lhs, rhs, scale, holds):
    params = {key: int(v[k]) for key, v in d.items()}
    return {"fact": fact, "params": params, "lhs": str(Fraction(int(lhs[k]), scale)),
            "rhs": str(Fraction(int(rhs[k]), scale)), "holds": bool(holds[k])}


def _run_chunk(args):
    fact, n_lo, n_hi, seed, index, size, keep = args
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    d = SAMPLERS[fact](rng, size, n_lo, n_hi)
    if fact == "2.3":
        holds, f, cap, h, h2 = _check_23(d)
        lhs, rhs, scale = f, cap, 1
    else:
        lhs, rhs, scale = _check(fact, d)
        holds = lhs <= rhs
    bad = np.flatnonzero(~holds)
    wit = [_record(fact, d, int(k), lhs, rhs, scale, holds) for k in bad[:keep]]
    return len(holds), len(bad), wit


def scan_fact_inequalities(fact: str, n_range: tuple[int, int] = (LARGE_N, 10000),
                           samples: int = 10**6, seed: int = 0, *, workers: int = 1,
                           keep: int = 10) -> FactReport:
    if fact not in FACTS:
        raise ValueError(f"unknown fact {fact!r}; choose from {FACTS}")
    n_lo, n_hi = n_range
    if n_lo > n_hi:
        raise ValueError("empty n range")
    # smallest n with a positive admissible t (and room for m, i >= 1)
    if t_limit(n_hi) < 1 or n_hi < 27:
        raise ValueError(f"no admissible tuples for n in {n_range}")
    n_lo = max(n_lo, 27)
    chunks = [(fact, n_lo, n_hi, seed, k, min(CHUNK, samples - k * CHUNK), keep)
              for k in range(-(-samples // CHUNK))]
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            results = pool.map(_run_chunk, chunks)
    else:
        results = [_run_chunk(c) for c in chunks]
    rep = FactReport(fact, (n_lo, n_hi), samples, seed, informational=n_lo < LARGE_N)
    for checked, bad, wit in results:
        rep.checked += checked
        rep.violations += bad
        rep.witnesses.extend(wit)
    rep.witnesses = rep.witnesses[:keep]
    return rep
