"""Compiled BFS kernels over CSR adjacency arrays."""

import numpy as np
from numba import njit


@njit(cache=True)
def bfs(indptr, indices, source, limit):
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    dist[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        if limit >= 0 and du > limit:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = du
                queue[tail] = w
                tail += 1
    return dist


@njit(cache=True)
def bfs_multi(indptr, indices, sources, limit):
    """BFS from a vertex set; ``label[x]`` is the source that reached x first."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int64)
    label = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    tail = 0
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            label[s] = s
            queue[tail] = s
            tail += 1
    head = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        if limit >= 0 and du > limit:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = du
                label[w] = label[u]
                queue[tail] = w
                tail += 1
    return dist, label


@njit(cache=True)
def bfs_rows(indptr, indices, sources):
    n = indptr.shape[0] - 1
    out = np.empty((sources.shape[0], n), np.int32)
    for i in range(sources.shape[0]):
        out[i, :] = bfs(indptr, indices, sources[i], -1)
    return out


@njit(cache=True)
def ecc_from_support(indptr, indices, support, weights):
    """Weighted eccentricity of every vertex, one BFS per support vertex."""
    n = indptr.shape[0] - 1
    out = np.zeros(n, np.float64)
    for i in range(support.shape[0]):
        d = bfs(indptr, indices, support[i], -1)
        w = weights[i]
        for x in range(n):
            val = w * d[x]
            if val > out[x]:
                out[x] = val
    return out


@njit(cache=True)
def ecc_at(indptr, indices, vertices, support, weights):
    """Weighted eccentricity of selected vertices, one BFS per vertex."""
    out = np.zeros(vertices.shape[0], np.float64)
    for i in range(vertices.shape[0]):
        d = bfs(indptr, indices, vertices[i], -1)
        best = 0.0
        for j in range(support.shape[0]):
            val = weights[j] * d[support[j]]
            if val > best:
                best = val
        out[i] = best
    return out
