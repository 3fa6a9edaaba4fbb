"""Graphs cellularly embedded in closed orientable surfaces.

A rotation system lists darts (half-edges) 0..2e-1, a vertex rotation
(permutation whose cycles are the darts around each vertex, in cyclic
order) and a fixed-point-free involution pairing the two darts of every
edge.  Faces are the orbits of rotation-after-involution, and the closed
surface carrying the embedding has Euler characteristic v - e + f.

A subset of vertices can be marked.  Marked vertices stand for collapsed
boundary circles of a bordered surface, so edges incident to them model
nodal arcs that run into the boundary; l marks and the reduced Euler
number chibar describe the surface the graph came from.

The decomposition at an unmarked vertex x splits its component into the
circuit part (every edge lying on some circuit, plus the bridges leading
from x towards them) and the boundary tree (simple paths from x to marked
vertices avoiding the circuit part).  Both the handshake identity and the
degree bound ``deg_circuit(x) <= 2 l + 2 - 2 chibar`` are checkable on
top of that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class RotationSystemError(ValueError):
    pass


class RotationSystem:
    """Immutable combinatorial map with marked vertices.

    Parameters
    ----------
    vertex_rotation : sequence of int
        Permutation of 0..n-1 whose cycles are the vertices.
    edge_involution : sequence of int, optional
        Fixed-point-free involution; defaults to pairing 2i with 2i+1.
    marks : iterable of int, optional
        Vertex ids (vertices are numbered by ascending smallest dart)
        acting as boundary-component vertices.
    """

    def __init__(self, vertex_rotation, edge_involution=None, marks=()):
        sigma = np.asarray(vertex_rotation, dtype=np.int64)
        n = len(sigma)
        if n == 0 or n % 2 != 0:
            raise RotationSystemError("dart count must be positive and even")
        if sorted(sigma.tolist()) != list(range(n)):
            raise RotationSystemError("vertex rotation is not a permutation")
        if edge_involution is None:
            alpha = np.arange(n) ^ 1
        else:
            alpha = np.asarray(edge_involution, dtype=np.int64)
            if sorted(alpha.tolist()) != list(range(n)):
                raise RotationSystemError("edge involution is not a permutation")
            if (alpha[alpha] != np.arange(n)).any() or (alpha == np.arange(n)).any():
                raise RotationSystemError(
                    "edge involution must be a fixed-point-free involution")
        self.sigma = sigma
        self.alpha = alpha
        self.n_darts = n

        self.vertices = _cycles(sigma)
        self.vertex_of_dart = _orbit_index(self.vertices, n)
        self.faces = _cycles(sigma[alpha])
        self.face_of_dart = _orbit_index(self.faces, n)

        pairs = sorted({(min(d, int(alpha[d])), max(d, int(alpha[d])))
                        for d in range(n)})
        self.edge_darts = pairs
        self.edge_of_dart = np.empty(n, dtype=np.int64)
        for e, (d1, d2) in enumerate(pairs):
            self.edge_of_dart[d1] = e
            self.edge_of_dart[d2] = e

        marks = frozenset(int(m) for m in marks)
        if any(m < 0 or m >= len(self.vertices) for m in marks):
            raise RotationSystemError("mark is not a vertex id")
        self.marks = marks

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edge_darts)

    @property
    def n_faces(self):
        return len(self.faces)

    @property
    def surface_euler(self):
        """v - e + f; the ambient closed surface of a connected map."""
        return self.n_vertices - self.n_edges + self.n_faces

    def degree(self, v):
        return len(self.vertices[v])

    def edge_endpoints(self, e):
        d1, d2 = self.edge_darts[e]
        return int(self.vertex_of_dart[d1]), int(self.vertex_of_dart[d2])

    def is_connected(self):
        if self.n_darts == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for nxt in (int(self.sigma[d]), int(self.alpha[d])):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.n_darts


def _cycles(perm):
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = int(perm[d])
        cycles.append(tuple(cyc))
    return cycles


def _orbit_index(cycles, n):
    idx = np.empty(n, dtype=np.int64)
    for i, cyc in enumerate(cycles):
        for d in cyc:
            idx[d] = i
    return idx


def face_count(rs):
    """Number of faces (orbits of rotation-after-involution)."""
    return rs.n_faces


def degree_sum_check(rs):
    """Handshake identity 2e = sum of vertex degrees, recounted."""
    return 2 * rs.n_edges == sum(rs.degree(v) for v in range(rs.n_vertices))


def euler_defect(rs, subgraph):
    """(v - e + f) - chi for an edge-subset subgraph of a connected map.

    All vertices are retained.  Faces of the subgraph are the faces of the
    full map merged across every deleted edge, i.e. the connected
    components of the complement; the defect is non-negative and vanishes
    exactly when every subgraph face is a disk.
    """
    sub = frozenset(int(e) for e in subgraph)
    if any(e < 0 or e >= rs.n_edges for e in sub):
        raise RotationSystemError("subgraph edge id out of range")
    parent = list(range(rs.n_faces))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in range(rs.n_edges):
        if e in sub:
            continue
        d1, d2 = rs.edge_darts[e]
        r1, r2 = find(int(rs.face_of_dart[d1])), find(int(rs.face_of_dart[d2]))
        if r1 != r2:
            parent[max(r1, r2)] = min(r1, r2)
    f = len({find(i) for i in range(rs.n_faces)})
    v = rs.n_vertices
    return v - len(sub) + f - rs.surface_euler


def subgraph_faces(rs, subgraph):
    """Face id (in merged numbering) per full-map face, for a subgraph."""
    sub = frozenset(int(e) for e in subgraph)
    parent = list(range(rs.n_faces))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in range(rs.n_edges):
        if e in sub:
            continue
        d1, d2 = rs.edge_darts[e]
        r1, r2 = find(int(rs.face_of_dart[d1])), find(int(rs.face_of_dart[d2]))
        if r1 != r2:
            parent[max(r1, r2)] = min(r1, r2)
    return [find(i) for i in range(rs.n_faces)]


# ---------------------------------------------------------------------------
# split graph and the decomposition at a vertex
# ---------------------------------------------------------------------------

def _split_graph(rs):
    """Adjacency where each dart at a marked vertex becomes its own leaf.

    Nodes are ('i', vertex) for unmarked vertices and ('b', dart) for
    boundary leaves; each edge id keeps its identity.
    """
    def node_of(d):
        v = int(rs.vertex_of_dart[d])
        return ("b", int(d)) if v in rs.marks else ("i", v)

    adj = {}
    endpoints = {}
    for e, (d1, d2) in enumerate(rs.edge_darts):
        a, b = node_of(d1), node_of(d2)
        endpoints[e] = (a, b)
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    return adj, endpoints


def _bridges(adj):
    """Bridge edge ids of a multigraph given as node -> [(edge, nb)]."""
    disc = {}
    low = {}
    bridges = set()
    counter = [0]
    for root in adj:
        if root in disc:
            continue
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        stack = [(root, None, 0)]
        while stack:
            node, pedge, ptr = stack[-1]
            neighbors = adj[node]
            advanced = False
            while ptr < len(neighbors):
                eid, nb = neighbors[ptr]
                ptr += 1
                if eid == pedge or nb == node:
                    continue
                if nb not in disc:
                    disc[nb] = low[nb] = counter[0]
                    counter[0] += 1
                    stack[-1] = (node, pedge, ptr)
                    stack.append((nb, eid, 0))
                    advanced = True
                    break
                low[node] = min(low[node], disc[nb])
            if advanced:
                continue
            stack.pop()
            if stack:
                pnode = stack[-1][0]
                low[pnode] = min(low[pnode], low[node])
                if low[node] > disc[pnode]:
                    bridges.add(pedge)
            else:
                pass
    return bridges


def _component(adj, start):
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for _, nb in adj.get(node, ()):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


@dataclass
class VertexDecomposition:
    """Circuit part and boundary tree of the component of x.

    ``circuit_part`` carries every edge on some circuit plus the bridges
    leading from x to them; ``tree_part`` is the union of simple paths
    from x to marked vertices avoiding the circuit part, always a tree.
    """

    x: int
    circuit_part: frozenset
    tree_part: frozenset
    circuit_degree: int
    tree_degree: int
    degree_x: int
    order_x: int               # degree_x // 2; the local order when even
    v1: int
    e1: int
    v2: int
    e2: int
    tree_leaves: int

    @property
    def degree_identity_ok(self):
        # every edge at x sits in exactly one of the two parts
        return self.circuit_degree + self.tree_degree == self.degree_x

    @property
    def tree_count_ok(self):
        # edges not incident to x outnumber the non-x vertices
        return self.e2 - self.tree_degree >= self.v2 - 1


def decompose_at_vertex(rs, x):
    """Split the edges around unmarked vertex ``x`` into circuit part and
    boundary tree.

    Raises
    ------
    RotationSystemError
        If ``x`` is marked, or some edge at ``x`` reaches neither a
        circuit nor a marked vertex (the graph is not nodal-shaped).
    """
    if x in rs.marks:
        raise RotationSystemError("decomposition vertex must be unmarked")
    if x < 0 or x >= rs.n_vertices:
        raise RotationSystemError("vertex id out of range")
    adj, endpoints = _split_graph(rs)
    xnode = ("i", int(x))
    comp = _component(adj, xnode)
    bridges = _bridges({k: v for k, v in adj.items() if k in comp})

    comp_edges = {e for e, (a, b) in endpoints.items()
                  if a in comp and b in comp}
    circuit_edges = {e for e in comp_edges if e not in bridges}

    # blocks: nodes joined through circuit edges
    block = {node: node for node in comp}

    def bfind(n_):
        while block[n_] != n_:
            block[n_] = block[block[n_]]
            n_ = block[n_]
        return n_

    for e in circuit_edges:
        a, b = endpoints[e]
        ra, rb = bfind(a), bfind(b)
        if ra != rb:
            block[max(ra, rb)] = min(ra, rb)
    cyclic_blocks = {bfind(endpoints[e][0]) for e in circuit_edges}

    # bridge tree rooted at x's block: keep bridges with circuits below
    tree_adj = {}
    for e in comp_edges & bridges:
        a, b = bfind(endpoints[e][0]), bfind(endpoints[e][1])
        tree_adj.setdefault(a, []).append((e, b))
        tree_adj.setdefault(b, []).append((e, a))
    root = bfind(xnode)
    keep_bridges = set()
    order = [(root, None)]
    parent_edge = {root: None}
    i = 0
    while i < len(order):
        node, pe = order[i]
        i += 1
        for e, nb in tree_adj.get(node, ()):
            if e == pe:
                continue
            parent_edge[nb] = e
            order.append((nb, e))
    contains = {node: node in cyclic_blocks for node, _ in order}
    for node, pe in reversed(order):
        if pe is not None and contains[node]:
            keep_bridges.add(pe)
            pnode = bfind(endpoints[pe][0])
            if pnode == node:
                pnode = bfind(endpoints[pe][1])
            contains[pnode] = True

    gamma1 = frozenset(circuit_edges | keep_bridges)
    g1_nodes = {xnode}
    for e in gamma1:
        g1_nodes.update(endpoints[e])

    # boundary tree: forest search from x avoiding the circuit part
    blocked = (g1_nodes - {xnode})
    tree_edges = set()
    leaves = set()
    t_adj = {}
    for e in comp_edges - gamma1:
        a, b = endpoints[e]
        if a in blocked or b in blocked:
            continue
        t_adj.setdefault(a, []).append((e, b))
        t_adj.setdefault(b, []).append((e, a))
    walk = [(xnode, None)]
    parent_of = {xnode: None}
    i = 0
    while i < len(walk):
        node, pe = walk[i]
        i += 1
        if node[0] == "b":
            continue  # never walk through a boundary leaf
        for e, nb in t_adj.get(node, ()):
            if e == pe or nb in parent_of:
                continue
            parent_of[nb] = e
            walk.append((nb, e))
    has_leaf = {node: node[0] == "b" for node, _ in walk}
    for node, pe in reversed(walk):
        if pe is not None and has_leaf[node]:
            tree_edges.add(pe)
            a, b = endpoints[pe]
            up = a if parent_of.get(b) == pe else b
            has_leaf[up] = True
            if node[0] == "b":
                leaves.add(node)

    gamma2 = frozenset(tree_edges)
    x_darts = rs.vertices[x]
    deg1 = sum(1 for d in x_darts if int(rs.edge_of_dart[d]) in gamma1)
    deg2 = sum(1 for d in x_darts if int(rs.edge_of_dart[d]) in gamma2)
    uncovered = [int(rs.edge_of_dart[d]) for d in x_darts
                 if int(rs.edge_of_dart[d]) not in gamma1
                 and int(rs.edge_of_dart[d]) not in gamma2]
    if uncovered:
        raise RotationSystemError(
            f"edge {uncovered[0]} at vertex {x} reaches neither a circuit "
            "nor a boundary vertex; not a nodal-shaped graph")

    g2_interior = {xnode}
    n_leaves = 0
    for e in gamma2:
        for node in endpoints[e]:
            if node[0] == "i":
                g2_interior.add(node)
            else:
                n_leaves += 1
    return VertexDecomposition(
        x=int(x), circuit_part=gamma1, tree_part=gamma2,
        circuit_degree=deg1, tree_degree=deg2,
        degree_x=rs.degree(x), order_x=rs.degree(x) // 2,
        v1=len(g1_nodes), e1=len(gamma1),
        v2=len(g2_interior), e2=len(gamma2), tree_leaves=n_leaves)


@dataclass
class CircuitDegreeReport:
    """Outcome of the circuit-degree bound check at a vertex."""

    rejected: bool
    reason: str
    circuit_degree: int
    bound: int
    edge_count_ok: bool        # 2 e1 >= deg_circuit(x) + 2 (v1 - 1)
    n_circuit_faces: int

    @property
    def ok(self):
        return (not self.rejected) and self.circuit_degree <= self.bound \
            and self.edge_count_ok


def circuit_degree_check(rs, x, l=None, chi_bar=None):
    """Check ``deg_circuit(x) <= 2 l + 2 - 2 chibar`` on a marked map.

    The map must be shaped like a reduced nodal graph: every face of the
    circuit part has to contain at least one mark (each mark lands in
    exactly one such face).  Inputs failing that precondition, or the
    nodal-shape precondition of the decomposition, are rejected rather
    than reported as violations.
    """
    if l is None:
        l = len(rs.marks)
    if chi_bar is None:
        chi_bar = rs.surface_euler
    try:
        dec = decompose_at_vertex(rs, x)
    except RotationSystemError as exc:
        return CircuitDegreeReport(True, str(exc), 0, 0, False, 0)

    merged = subgraph_faces(rs, dec.circuit_part)
    mark_faces = set()
    for m in rs.marks:
        d = rs.vertices[m][0]
        mark_faces.add(merged[int(rs.face_of_dart[d])])
    all_faces = set(merged)
    if all_faces - mark_faces:
        return CircuitDegreeReport(
            True, "a face of the circuit part contains no boundary mark",
            dec.circuit_degree, 0, False, len(all_faces))

    bound = 2 * l + 2 - 2 * chi_bar
    a1_ok = 2 * dec.e1 >= dec.circuit_degree + 2 * (dec.v1 - 1)
    return CircuitDegreeReport(False, "", dec.circuit_degree, bound,
                               a1_ok, len(all_faces))


# ---------------------------------------------------------------------------
# generation and text format
# ---------------------------------------------------------------------------

def random_rotation_system(rng, n_edges, max_marks=3, require_unmarked=True):
    """Random connected marked rotation system with ``n_edges`` edges."""
    n = 2 * int(n_edges)
    for _ in range(1000):
        sigma = rng.permutation(n)
        rs = RotationSystem(sigma)
        if not rs.is_connected():
            continue
        nv = rs.n_vertices
        if require_unmarked and nv < 2:
            continue
        n_marks = int(rng.integers(1, min(max_marks, nv if require_unmarked
                                          else nv + 1) + 1))
        if require_unmarked:
            n_marks = min(n_marks, nv - 1)
        if n_marks < 1:
            continue
        marks = rng.choice(nv, size=n_marks, replace=False)
        return RotationSystem(sigma, marks=marks)
    raise RuntimeError("failed to sample a connected rotation system")


def enumerate_vertex_rotations(n_edges):
    """All vertex rotations on 2 n_edges darts giving a connected map
    (edge involution fixed to the 2i / 2i+1 pairing)."""
    from itertools import permutations as _perms
    n = 2 * int(n_edges)
    for sigma in _perms(range(n)):
        rs = RotationSystem(sigma)
        if rs.is_connected():
            yield rs


def rotation_system_to_text(rs):
    def cyc_str(cycles):
        return "".join("(" + " ".join(str(d) for d in c) + ")" for c in cycles)

    lines = [f"DARTS {rs.n_darts}",
             "SIGMA " + cyc_str(_cycles(rs.sigma)),
             "ALPHA " + cyc_str(rs.edge_darts),
             "MARKS " + " ".join(str(rs.vertices[m][0])
                                 for m in sorted(rs.marks))]
    return "\n".join(lines) + "\n"


def parse_rotation_system(text):
    """Parse the DARTS / SIGMA / ALPHA / MARKS text format.

    MARKS names each marked vertex by any dart it contains.
    """
    n = None
    sigma = alpha = None
    mark_darts = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        key = key.upper()
        if key == "DARTS":
            n = int(rest)
        elif key == "SIGMA":
            sigma = _perm_from_cycles(rest, n)
        elif key == "ALPHA":
            alpha = _perm_from_cycles(rest, n)
        elif key == "MARKS":
            mark_darts = [int(t) for t in rest.split()] if rest.strip() else []
        else:
            raise RotationSystemError(f"unknown section '{key}'")
    if n is None or sigma is None:
        raise RotationSystemError("DARTS and SIGMA sections are required")
    rs = RotationSystem(sigma, alpha)
    marks = {int(rs.vertex_of_dart[d]) for d in mark_darts}
    return RotationSystem(sigma, alpha, marks=marks)


def _perm_from_cycles(text, n):
    if n is None:
        raise RotationSystemError("DARTS must come before permutations")
    perm = list(range(n))
    depth = 0
    cur = []
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    for tok in tokens:
        if tok == "(":
            depth += 1
            cur = []
        elif tok == ")":
            depth -= 1
            for i, d in enumerate(cur):
                perm[d] = cur[(i + 1) % len(cur)]
            cur = []
        else:
            cur.append(int(tok))
    if depth != 0:
        raise RotationSystemError("unbalanced cycle notation")
    return perm
