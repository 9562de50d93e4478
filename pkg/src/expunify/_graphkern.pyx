# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled graph kernels. Same algorithms and witness order as _graphkern_py."""

from libc.stdlib cimport malloc, free


def find_cycle(int n, list src, list dst):
    cdef int m = len(src)
    cdef int i, k, s, u, v, top, p
    cdef int *start = <int *> malloc((n + 1) * sizeof(int))
    cdef int *fill = <int *> malloc((n + 1) * sizeof(int))
    cdef int *adj = <int *> malloc((m + 1) * sizeof(int))
    cdef char *color = <char *> malloc((n + 1) * sizeof(char))
    cdef int *pos = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cursor = <int *> malloc((n + 1) * sizeof(int))
    cdef int *path = <int *> malloc((n + 1) * sizeof(int))
    cdef int root
    result = None
    try:
        for i in range(n + 1):
            start[i] = 0
        for k in range(m):
            start[<int> src[k] + 1] += 1
        for i in range(n):
            start[i + 1] += start[i]
        for i in range(n):
            fill[i] = start[i]
            color[i] = 0
        for k in range(m):
            s = src[k]
            adj[fill[s]] = dst[k]
            fill[s] += 1
        for root in range(n):
            if color[root]:
                continue
            top = 0
            path[0] = root
            color[root] = 1
            pos[root] = 0
            cursor[root] = start[root]
            while top >= 0:
                u = path[top]
                if cursor[u] < start[u + 1]:
                    v = adj[cursor[u]]
                    cursor[u] += 1
                    if color[v] == 1:
                        result = [path[p] for p in range(pos[v], top + 1)]
                        return result
                    if color[v] == 0:
                        color[v] = 1
                        top += 1
                        pos[v] = top
                        cursor[v] = start[v]
                        path[top] = v
                else:
                    color[u] = 2
                    top -= 1
        return None
    finally:
        free(start)
        free(fill)
        free(adj)
        free(color)
        free(pos)
        free(cursor)
        free(path)


cdef inline int _find(int *parent, int x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def components(int n, list a, list b):
    cdef int *parent = <int *> malloc((n + 1) * sizeof(int))
    cdef int i, k, ra, rb
    try:
        for i in range(n):
            parent[i] = i
        for k in range(len(a)):
            ra = _find(parent, a[k])
            rb = _find(parent, b[k])
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        return [_find(parent, i) for i in range(n)]
    finally:
        free(parent)
