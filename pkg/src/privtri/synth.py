"""Synthetic graph builders for tests and benchmarks.

clique_hub_proxy is the desk-scale stand-in for a large social graph when
no real edge list is on disk: dense same-degree communities carry the
triangles, and a single dominant hub gives the degree distribution an
isolated, well-separated maximum.
"""

import numpy as np

from .graph import Graph


def erdos_renyi(n: int, p: float, rng) -> Graph:
    """G(n, p): each pair independently an edge with probability p."""
    upper = np.triu(rng.random((n, n)) < p, 1).astype(np.uint8)
    return Graph(n, upper | upper.T)


def planted_hub(
    n_partners: int = 3, n_leaves: int = 17, partner_degree: int = 19
) -> Graph:
    """Hub whose triangles live on a few equal-degree partners.

    Node 0 is the hub, joined to n_partners mutually adjacent partners and
    to n_leaves pendant leaves. Each partner gets its own pendant leaves
    until it reaches partner_degree, so partner degrees sit close to the
    hub's while leaf degrees are far from it. Projection that keeps
    degree-similar neighbors retains every triangle; uniform deletion
    rarely keeps all partner edges.
    """
    if partner_degree < n_partners:
        raise ValueError("partner_degree below its forced minimum")
    edges = []
    partners = list(range(1, 1 + n_partners))
    for a_idx, a in enumerate(partners):
        edges.append((0, a))
        for b in partners[a_idx + 1 :]:
            edges.append((a, b))
    nxt = 1 + n_partners
    for _ in range(n_leaves):
        edges.append((0, nxt))
        nxt += 1
    boost = partner_degree - n_partners
    for a in partners:
        for _ in range(boost):
            edges.append((a, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def clique_hub_proxy(
    n: int = 2000, clique_size: int = 20, hub_reach: int = 1881
) -> Graph:
    """Disjoint cliques plus one hub of isolated maximum degree.

    Nodes [c*clique_size, (c+1)*clique_size) form a clique; node 0
    additionally links to nodes clique_size .. clique_size + hub_reach - 1.
    Deterministic, so prefix subgraphs are reproducible.
    """
    if n % clique_size:
        raise ValueError("n must be a multiple of clique_size")
    if hub_reach > n - clique_size:
        raise ValueError("hub_reach exceeds nodes outside the hub's clique")
    adj = np.zeros((n, n), dtype=np.uint8)
    for base in range(0, n, clique_size):
        adj[base : base + clique_size, base : base + clique_size] = 1
    hub_end = clique_size + hub_reach
    adj[0, clique_size:hub_end] = 1
    adj[clique_size:hub_end, 0] = 1
    np.fill_diagonal(adj, 0)
    return Graph(n, adj)


def write_edge_list(g: Graph, path) -> None:
    """Write g as a SNAP-style edge list (one 'u v' line per edge)."""
    ii, jj = np.nonzero(np.triu(g.adj, 1))
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in zip(ii.tolist(), jj.tolist()):
            fh.write(f"{u} {v}\n")
