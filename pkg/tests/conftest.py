"""Shared test helpers: independent oracles, small graph builders, data paths."""

import os
from pathlib import Path

import numpy as np
import pytest

from privtri import Graph


def brute_triangles(g: Graph) -> int:
    """Independent triangle oracle: full triple sum over the dense matrix.

    (1/6) * sum_{i,j,k} a_ij * a_ik * a_jk, kept deliberately naive so the
    optimized bitset path is checked against something with no shared code.
    """
    a = g.adj.astype(np.int64)
    return int(np.einsum("ij,ik,jk->", a, a, a)) // 6


def complete_graph(n: int) -> Graph:
    adj = np.ones((n, n), dtype=np.uint8)
    np.fill_diagonal(adj, 0)
    return Graph(n, adj)


def star_graph(n_leaves: int) -> Graph:
    return Graph.from_edges(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])


def write_lines(path: Path, lines) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def facebook_path() -> Path | None:
    """Real SNAP edge list, if the user has dropped one in; else None."""
    env = os.environ.get("PRIVTRI_DATA")
    candidates = []
    if env:
        candidates.append(Path(env))
    candidates.append(Path(__file__).resolve().parent.parent / "data" / "facebook_combined.txt")
    for cand in candidates:
        if cand.is_file():
            return cand
    return None


requires_facebook = pytest.mark.skipif(
    facebook_path() is None,
    reason="SNAP facebook edge list not present (set PRIVTRI_DATA or add data/facebook_combined.txt)",
)


@pytest.fixture(scope="session")
def proxy_graph_file(tmp_path_factory) -> Path:
    """Edge list of the deterministic social-graph stand-in (n=2000).

    Used in place of a real SNAP download: dense cliques carry the
    triangles and node 0 is a dominant hub, so prefix subgraphs keep a
    clear maximum degree.
    """
    from privtri.synth import clique_hub_proxy, write_edge_list

    path = tmp_path_factory.mktemp("data") / "proxy2000.txt"
    write_edge_list(clique_hub_proxy(), path)
    return path


@pytest.fixture(scope="session")
def planted_graph_file(tmp_path_factory) -> Path:
    from privtri.synth import planted_hub, write_edge_list

    path = tmp_path_factory.mktemp("data") / "planted.txt"
    write_edge_list(planted_hub(), path)
    return path


@pytest.fixture(scope="session")
def k4_graph_file(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("data") / "k4.txt"
    lines = [f"{u} {v}" for u in range(4) for v in range(u + 1, 4)]
    return write_lines(path, lines)
