"""Pure-Python graph kernels. Must stay step-for-step identical to _graphkern.pyx."""

from __future__ import annotations


def find_cycle(n: int, src: list[int], dst: list[int]) -> list[int] | None:
    """Return the nodes of some directed cycle, or None.

    Nodes are visited in index order and edges in input order, so the witness
    is deterministic. A self-loop yields a one-node cycle.
    """
    m = len(src)
    start = [0] * (n + 1)
    for s in src:
        start[s + 1] += 1
    for i in range(n):
        start[i + 1] += start[i]
    adj = [0] * m
    fill = start[:n]
    for k in range(m):
        s = src[k]
        adj[fill[s]] = dst[k]
        fill[s] += 1

    color = [0] * n  # 0 white, 1 on stack, 2 done
    pos_in_path = [-1] * n
    path: list[int] = []
    cursor = [0] * n
    for root in range(n):
        if color[root]:
            continue
        path.append(root)
        color[root] = 1
        pos_in_path[root] = 0
        cursor[root] = start[root]
        while path:
            u = path[-1]
            if cursor[u] < start[u + 1]:
                v = adj[cursor[u]]
                cursor[u] += 1
                if color[v] == 1:
                    return path[pos_in_path[v]:]
                if color[v] == 0:
                    color[v] = 1
                    pos_in_path[v] = len(path)
                    cursor[v] = start[v]
                    path.append(v)
            else:
                color[u] = 2
                path.pop()
    return None


def components(n: int, a: list[int], b: list[int]) -> list[int]:
    """Union-find over pairs; each node is labelled with the smallest index in its component."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in range(len(a)):
        ra, rb = find(a[k]), find(b[k])
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    return [find(x) for x in range(n)]
