"""Enumeration of gain functions on a small linear space, filtered by the
quadrangle criterion.

The default scan fixes a spanning-tree gauge: tree edges carry the
identity, so each switching class is visited exactly once (switching a
gain function never changes the expansion up to isomorphism).  The
unreduced mode scans every assignment and exists to cross-check that
reduction; it is feasible only for the smallest spaces.

Scans are deterministic: free edges are ordered, group elements are
enumerated in their canonical order, and assignment number k maps to the
mixed-radix digits of k.  A checkpoint stores the next index plus the
accumulated tallies, so an interrupted scan resumes bit-identically.
"""

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field

from .construction import bijective_pair_count, expand, gq_criterion, gq_parameters
from .gains import GainGraph, gains_to_json, spanning_tree_edges
from .geometry import is_linear_space, structure_to_json
from .iso import canonical_form


@dataclass
class SearchReport:
    base: dict
    group: dict
    gauge_fixed: bool
    free_edges: list
    total_space: int
    scanned: int
    gq_count: int
    certificates: list
    representatives: list
    near_miss: dict
    partial: bool
    config: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "base": self.base,
            "group": self.group,
            "gauge_fixed": self.gauge_fixed,
            "free_edges": [list(e) for e in self.free_edges],
            "total_space": self.total_space,
            "scanned": self.scanned,
            "gq_count": self.gq_count,
            "class_count": len(self.certificates),
            "certificates": list(self.certificates),
            "representatives": self.representatives,
            "near_miss": {str(k): v for k, v in sorted(self.near_miss.items())},
            "partial": self.partial,
            "config": self.config,
        }


def _unrank(index, radix, width):
    digits = []
    for _ in range(width):
        digits.append(index % radix)
        index //= radix
    return digits[::-1]


def _config_digest(base, group, unreduced, near_miss):
    blob = json.dumps({
        "base": structure_to_json(base),
        "group": group.spec(),
        "unreduced": unreduced,
        "near_miss": near_miss,
    }, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def run_search(base, group, budget=None, unreduced=False, near_miss=True,
               checkpoint_path=None, checkpoint_every=2048):
    """Scan gain assignments on a connected finite linear space.

    near_miss=True evaluates every non-incident pair so that failing
    assignments are bucketed by how many pairs were bijective; with
    near_miss=False the criterion short-circuits at the first bad pair.
    budget caps the number of assignments examined; a capped report is
    flagged partial.
    """
    ls = is_linear_space(base)
    if not ls:
        raise ValueError(f"search base is not a linear space: {ls.witness}")
    if not group.finite:
        raise ValueError("search needs a finite group")

    all_edges = sorted((b, p) for p, b in base.incidence)
    tree = set(spanning_tree_edges(base))
    if unreduced:
        free = all_edges
        fixed = {}
    else:
        free = [e for e in all_edges if e not in tree]
        fixed = {e: group.identity() for e in tree}
    elems = group.elements()
    radix = len(elems)
    total = radix ** len(free)
    digest = _config_digest(base, group, unreduced, near_miss)

    start = 0
    scanned = 0
    gq_count = 0
    certs = []
    cert_set = set()
    reps = []
    misses = Counter()
    if checkpoint_path is not None:
        try:
            with open(checkpoint_path) as fh:
                state = json.load(fh)
        except FileNotFoundError:
            state = None
        if state is not None:
            if state.get("digest") != digest:
                raise ValueError("checkpoint does not match this search")
            start = state["next_index"]
            scanned = state["scanned"]
            gq_count = state["gq_count"]
            certs = state["certificates"]
            cert_set = set(certs)
            reps = state["representatives"]
            misses = Counter({int(k): v for k, v in state["near_miss"].items()})

    def save_checkpoint(next_index):
        if checkpoint_path is None:
            return
        state = {
            "digest": digest,
            "next_index": next_index,
            "scanned": scanned,
            "gq_count": gq_count,
            "certificates": certs,
            "representatives": reps,
            "near_miss": {str(k): v for k, v in misses.items()},
        }
        with open(checkpoint_path, "w") as fh:
            json.dump(state, fh)

    partial = False
    index = start
    while index < total:
        if budget is not None and scanned >= budget:
            partial = True
            break
        digits = _unrank(index, radix, len(free))
        gains = dict(fixed)
        for e, d in zip(free, digits):
            gains[e] = elems[d]
        g = GainGraph(base, group, gains)
        if near_miss:
            good, pairs = bijective_pair_count(g)
            ok = good == pairs
            if not ok:
                misses[good] += 1
        else:
            ok = bool(gq_criterion(g))
        if ok:
            gq_count += 1
            c = expand(g)
            cf = canonical_form(c)
            if cf.certificate not in cert_set:
                cert_set.add(cf.certificate)
                certs.append(cf.certificate)
                s_par, t_par = gq_parameters(c)
                reps.append({
                    "certificate": cf.certificate,
                    "assignment_index": index,
                    "gains": gains_to_json(g),
                    "order": [s_par, t_par],
                    "structure": structure_to_json(c, tags=c.tags_json()),
                })
        scanned += 1
        index += 1
        if checkpoint_path is not None and index % checkpoint_every == 0:
            save_checkpoint(index)
    save_checkpoint(index)

    return SearchReport(
        base={"points": base.n_points, "lines": base.n_lines,
              "incidences": len(base.incidence)},
        group=group.spec(),
        gauge_fixed=not unreduced,
        free_edges=free,
        total_space=total,
        scanned=scanned,
        gq_count=gq_count,
        certificates=sorted(certs),
        representatives=reps,
        near_miss=dict(misses),
        partial=partial,
    )


def verify_known(plane):
    """Run the full pipeline on the shipped affine-plane gains.

    Any failure here is an implementation bug, not mathematics, so the
    stages raise instead of reporting.
    """
    from .catalog import affine_gains
    from .geometry import is_generalized_ngon

    g = affine_gains(plane)
    verdict = gq_criterion(g)
    if not verdict:
        raise RuntimeError(f"criterion rejected the shipped gains: {verdict.witness}")
    c = expand(g)
    ngon = is_generalized_ngon(c, 4)
    if not ngon:
        raise RuntimeError(f"verifier rejected the expansion: {ngon.witness}")
    s_par, t_par = gq_parameters(c)
    q = plane.field.order
    return {
        "field_order": q,
        "passed": True,
        "s": s_par,
        "t": t_par,
        "expected": [q + 1, q - 1],
        "points": c.n_points,
        "lines": c.n_lines,
    }
