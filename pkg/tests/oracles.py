"""Independent reference computations used to freeze expected values.

Nothing here calls into the package's linear algebra, Hom solver or torsion
machinery; inputs are plain arrays and arrow tables.
"""

from __future__ import annotations

import itertools

import numpy as np


def relation_free_paths(arrows, rels, max_len=50):
    """All paths as tuples of arrow names, trivial ones as ("e", v).

    arrows: {name: (src, tgt)}; rels: list of tuples of arrow names.
    """
    verts = sorted({v for st in arrows.values() for v in st})
    out = [("e", v) for v in verts]
    frontier = [(a,) for a in arrows]
    while frontier:
        nxt = []
        for path in frontier:
            if any(_contains(path, r) for r in rels):
                continue
            if len(path) > max_len:
                raise ValueError("path enumeration did not terminate")
            out.append(path)
            end = arrows[path[-1]][1]
            nxt.extend(path + (a,) for a, (s, _) in arrows.items() if s == end)
        frontier = nxt
    return out


def _contains(path, rel):
    k = len(rel)
    return any(tuple(path[i:i + k]) == tuple(rel) for i in range(len(path) - k + 1))


def path_counts(arrows, rels):
    """{(i, j): number of nonzero paths from i to j}."""
    counts = {}
    for path in relation_free_paths(arrows, rels):
        if path[0] == "e":
            key = (path[1], path[1])
        else:
            key = (arrows[path[0]][0], arrows[path[-1]][1])
        counts[key] = counts.get(key, 0) + 1
    return counts


def rank_mod_p(a, p):
    """Rank over F_p by plain Gaussian elimination on Python ints."""
    rows = [[int(x) % p for x in row] for row in np.asarray(a).tolist()]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def hom_dim(src_dims, src_maps, tgt_dims, tgt_maps, arrows, p):
    """dim of the space of representation maps, from the raw commutation system.

    *_dims: {vertex: dim}; *_maps: {arrow: matrix tgt_dim x src_dim}.
    """
    offs, n = {}, 0
    for v in sorted(src_dims):
        offs[v] = n
        n += src_dims[v] * tgt_dims[v]
    if n == 0:
        return 0
    eqs = []
    for a, (s, t) in arrows.items():
        A = np.asarray(src_maps[a], dtype=object).reshape(src_dims[t], src_dims[s])
        B = np.asarray(tgt_maps[a], dtype=object).reshape(tgt_dims[t], tgt_dims[s])
        # f_t A - B f_s = 0, entry (r, c) of a tgt_dims[t] x src_dims[s] matrix
        for r in range(tgt_dims[t]):
            for c in range(src_dims[s]):
                row = [0] * n
                for k in range(src_dims[t]):
                    row[offs[t] + r * src_dims[t] + k] += A[k, c]
                for k in range(tgt_dims[s]):
                    row[offs[s] + k * src_dims[s] + c] -= B[r, k]
                eqs.append(row)
    if not eqs:
        return n
    return n - rank_mod_p(eqs, p)


def module_hom_dim(M, N):
    """Adapter from package modules to the raw oracle (reads only dims and matrices)."""
    alg = M.alg
    arrows = {a.name: (a.src, a.tgt) for a in alg.arrows}
    md = {v: M.dim_at(v) for v in alg.vertices}
    nd = {v: N.dim_at(v) for v in alg.vertices}
    return hom_dim(md, {a: M.maps[a] for a in arrows}, nd, {a: N.maps[a] for a in arrows},
                   arrows, alg.p)


def euler_form(arrows, m, n):
    """<m, n> for a hereditary algebra: dim Hom - dim Ext^1."""
    verts = range(len(m))
    return sum(m[i] * n[i] for i in verts) - sum(m[s - 1] * n[t - 1] for s, t in arrows.values())


def brute_force_sttilt(names, hom_tau_zero, proj_of_vertex, dims, rank):
    """Support τ-tilting objects by exhaustive subset search.

    names: module names; hom_tau_zero(x, y): Hom(x, τy) = 0; proj_of_vertex: {vertex: name};
    dims: {name: dimension vector}.  Returns a set of frozensets of labels, with shifted
    projectives written "<name>[1]".
    """
    out = set()
    shifted = sorted(proj_of_vertex)
    for k in range(rank + 1):
        for mods in itertools.combinations(names, k):
            if not all(hom_tau_zero(x, y) for x in mods for y in mods):
                continue
            free = [v for v in shifted if all(dims[x][v - 1] == 0 for x in mods)]
            for sh in itertools.combinations(free, rank - k):
                out.add(frozenset(list(mods) + [proj_of_vertex[v] + "[1]" for v in sh]))
    return out
