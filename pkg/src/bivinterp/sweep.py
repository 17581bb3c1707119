"""Empirical Gasca-Maeztu check: every generated GC set must carry a maximal line.

Each trial is a pure function of ``(seed, degree, trial)``; the sweep is
evidence over the families generated here, not a proof.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor

from .errors import DomainError
from .lattices import (
    gpl_certificate,
    gpl_nodes,
    natural_lattice_certificate,
    natural_lattice_nodes,
    random_cover_family,
    random_gpl,
    random_natural_lattice,
)
from .maximal_line import geometric_maximal_lines, is_gc_set

log = logging.getLogger(__name__)

GENERATORS = ("natural", "gpl", "cover")


def generate(kind: str, n: int, rng: random.Random):
    """``(nodes, certificate)`` for one random GC set of degree ``n``."""
    if kind == "natural":
        spec = random_natural_lattice(n, rng, with_extension=False)
        return natural_lattice_nodes(spec, n), natural_lattice_certificate(spec, n)
    if kind == "gpl":
        spec = random_gpl(n, rng)
        return gpl_nodes(spec, n), gpl_certificate(spec, n)
    if kind == "cover":
        fam = random_cover_family(n, rng)
        return fam.nodes, fam.certificate
    raise ValueError(f"unknown generator {kind!r}")


def run_trial(seed: int, n: int, trial: int, generators=GENERATORS) -> dict:
    kind = generators[trial % len(generators)]
    rng = random.Random(f"{seed}:{n}:{trial}")
    Y, cert = generate(kind, n, rng)
    try:
        ok = is_gc_set(Y, n, cert)
    except DomainError:
        ok = False
    if not ok:
        return {"trial": trial, "generator": kind, "status": "skipped"}
    lines = geometric_maximal_lines(Y, n)
    out = {"trial": trial, "generator": kind, "status": "ok", "maximal_lines": len(lines)}
    if not lines:
        out["status"] = "violation"
        out["nodes"] = [[str(c) for c in y] for y in Y]
    return out


def _run_degree(args):
    seed, n, trials, generators = args
    return n, [run_trial(seed, n, t, generators) for t in range(trials)]


def _summarize(n: int, results: list[dict], generators) -> dict:
    by_gen = {}
    for g in generators:
        rs = [r for r in results if r["generator"] == g and r["status"] != "skipped"]
        by_gen[g] = {
            "checked": len(rs),
            "min_maximal_lines": min((r["maximal_lines"] for r in rs), default=None),
        }
    return {
        "trials": len(results),
        "checked": sum(r["status"] != "skipped" for r in results),
        "skipped": sum(r["status"] == "skipped" for r in results),
        "violations": sum(r["status"] == "violation" for r in results),
        "by_generator": by_gen,
    }


def gasca_maeztu_sweep(
    degrees=range(1, 6),
    trials: int = 1000,
    seed: int = 0,
    generators=GENERATORS,
    workers: int = 1,
) -> dict:
    """Report with per-degree counts; violating sets are listed in full."""
    degrees = list(degrees)
    if any(n < 1 or n > 5 for n in degrees):
        raise DomainError("sweep degrees must lie in 1..5")
    generators = tuple(generators)
    jobs = [(seed, n, trials, generators) for n in degrees]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = dict(pool.map(_run_degree, jobs))
    else:
        done = dict(map(_run_degree, jobs))
    report = {"seed": seed, "trials": trials, "generators": list(generators), "degrees": {}, "violations": []}
    for n in degrees:
        results = done[n]
        report["degrees"][str(n)] = _summarize(n, results, generators)
        for r in results:
            if r["status"] == "violation":
                log.error("degree %d trial %d: GC set without a maximal line", n, r["trial"])
                report["violations"].append({"degree": n, **r})
    report["total_violations"] = len(report["violations"])
    return report
