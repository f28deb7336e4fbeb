"""Combinatorial rooted trees: construction, subtree decomposition, enumeration,
and isomorphism canonicalization.

Vertices are dense integers 0..p-1.  All edges are oriented away from the root
when parent/child structure is needed.  Hat-subtrees (branches with the root
edge removed) remember the degrees their vertices had in the original tree via
the ``degree_bonus`` metadata, so that degree queries always answer with the
original degree.
"""

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class RootedTree:
    """Immutable rooted tree on vertices 0..p-1.

    degree_bonus maps vertex id -> extra degree carried over from a parent
    tree (used for hat-subtrees, where the edge to the deleted root is gone
    but the vertex keeps its original degree).
    """
    p: int
    root: int
    edges: tuple  # tuple of (u, v) with u < v, sorted
    degree_bonus: tuple = ()  # tuple of (vertex, bonus) pairs, sorted

    def __post_init__(self):
        object.__setattr__(self, "_adj", None)

    @property
    def adjacency(self):
        adj = object.__getattribute__(self, "_adj")
        if adj is None:
            adj = {v: [] for v in range(self.p)}
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            object.__setattr__(self, "_adj", adj)
        return adj

    @property
    def bonus_map(self):
        return dict(self.degree_bonus)

    def children(self):
        """Map vertex -> list of children (BFS orientation away from root)."""
        kids = {v: [] for v in range(self.p)}
        seen = {self.root}
        queue = [self.root]
        while queue:
            u = queue.pop(0)
            for w in sorted(self.adjacency[u]):
                if w not in seen:
                    seen.add(w)
                    kids[u].append(w)
                    queue.append(w)
        return kids

    def bfs_order(self):
        """Vertices in BFS order from the root, children visited in id order."""
        kids = self.children()
        order = [self.root]
        i = 0
        while i < len(order):
            order.extend(kids[order[i]])
            i += 1
        return order


def from_edge_list(p, root, edges):
    """Build a RootedTree, validating that `edges` is a tree on p vertices."""
    if not isinstance(p, int) or p < 1:
        raise ValueError("bad vertex id: p must be a positive integer")
    if not (0 <= root < p):
        raise ValueError("bad vertex id: root %r not in 0..%d" % (root, p - 1))
    norm = []
    for e in edges:
        u, v = e
        if not (0 <= u < p) or not (0 <= v < p):
            raise ValueError("bad vertex id: edge %r" % (e,))
        if u == v:
            raise ValueError("not a tree: self loop at %d" % u)
        norm.append((min(u, v), max(u, v)))
    if len(norm) != p - 1 or len(set(norm)) != len(norm):
        raise ValueError("not a tree: expected %d distinct edges, got %d"
                         % (p - 1, len(norm)))
    # connectivity check
    adj = {v: [] for v in range(p)}
    for u, v in norm:
        adj[u].append(v)
        adj[v].append(u)
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != p:
        raise ValueError("not a tree: graph is disconnected")
    return RootedTree(p=p, root=root, edges=tuple(sorted(norm)))


def degree(tree, v):
    """Degree of v, including any original-tree bonus carried as metadata."""
    if not (0 <= v < tree.p):
        raise ValueError("bad vertex id: %r" % (v,))
    return len(tree.adjacency[v]) + tree.bonus_map.get(v, 0)


def _extract(tree, vertices, new_root, extra_bonus=None):
    """Relabel an induced connected subset as a standalone tree."""
    vs = sorted(vertices)
    index = {v: i for i, v in enumerate(vs)}
    edges = [(index[u], index[v]) for u, v in tree.edges
             if u in index and v in index]
    bonus = {}
    for v, b in tree.degree_bonus:
        if v in index:
            bonus[index[v]] = bonus.get(index[v], 0) + b
    if extra_bonus:
        for v, b in extra_bonus.items():
            bonus[index[v]] = bonus.get(index[v], 0) + b
    bonus = {v: b for v, b in bonus.items() if b}
    return RootedTree(p=len(vs), root=index[new_root],
                      edges=tuple(sorted((min(e), max(e)) for e in edges)),
                      degree_bonus=tuple(sorted(bonus.items())))


def root_subtrees(tree):
    """Decompose at the root: one (T_k, hat T_k) pair per root edge.

    T_k is rooted at the root and contains only the k-th branch.  hat T_k is
    the branch with the root edge deleted, rooted at the branch vertex, whose
    degree annotation still counts the deleted edge.
    """
    if tree.p == 1:
        raise ValueError("single vertex")
    kids = tree.children()
    pairs = []
    for c in kids[tree.root]:
        branch = set()
        stack = [c]
        while stack:
            u = stack.pop()
            branch.add(u)
            stack.extend(kids[u])
        t_k = _extract(tree, branch | {tree.root}, tree.root)
        that_k = _extract(tree, branch, c, extra_bonus={c: 1})
        pairs.append((t_k, that_k))
    return pairs


def canonical_code(tree):
    """AHU canonical code; equal codes iff rooted-isomorphic.

    Nonzero degree annotations are embedded in the code so annotated
    hat-subtrees are distinguished from plain trees of the same shape.
    """
    kids = tree.children()
    bonus = tree.bonus_map

    def code(v):
        parts = sorted(code(c) for c in kids[v])
        b = bonus.get(v, 0)
        tag = str(b) if b else ""
        return "(" + tag + "".join(parts) + ")"

    return code(tree.root)


def is_isomorphic(a, b):
    return canonical_code(a) == canonical_code(b)


def _attach(subtrees):
    """Build a tree from a root plus a list of child subtrees."""
    edges = []
    offset = 1
    for sub in subtrees:
        shift = offset
        edges.append((0, sub.root + shift))
        for u, v in sub.edges:
            edges.append((u + shift, v + shift))
        offset += sub.p
    return RootedTree(p=offset, root=0,
                      edges=tuple(sorted((min(e), max(e)) for e in edges)))


def attach_branches(subtrees):
    """Public helper: new root joined to the roots of the given subtrees."""
    return _attach(list(subtrees))


def enumerate_rooted_trees(p):
    """One representative per rooted-isomorphism class with p vertices."""
    if not (1 <= p <= 12):
        raise ValueError("p out of range")
    return _enum_cached(p)


_ENUM_CACHE = {}


def _enum_cached(p):
    if p in _ENUM_CACHE:
        return _ENUM_CACHE[p]
    if p == 1:
        result = [RootedTree(p=1, root=0, edges=())]
    else:
        result = []
        seen = set()
        for multiset in _subtree_multisets(p - 1, 1):
            tree = _attach(multiset)
            code = canonical_code(tree)
            if code not in seen:
                seen.add(code)
                result.append(tree)
    _ENUM_CACHE[p] = result
    return result


def _subtree_multisets(total, min_size):
    """Yield lists of rooted trees with sizes summing to `total`, sizes
    nondecreasing, and within equal sizes nondecreasing canonical index."""
    if total == 0:
        yield []
        return
    for size in range(min_size, total + 1):
        pool = _enum_cached(size)
        for i, sub in enumerate(pool):
            for rest in _subtree_multisets_from(total - size, size, i):
                yield [sub] + rest


def _subtree_multisets_from(total, size, idx):
    if total == 0:
        yield []
        return
    # continue with same size from index idx, or larger sizes
    if size <= total:
        pool = _enum_cached(size)
        for j in range(idx, len(pool)):
            for rest in _subtree_multisets_from(total - size, size, j):
                yield [pool[j]] + rest
    for bigger in range(size + 1, total + 1):
        pool = _enum_cached(bigger)
        for j, sub in enumerate(pool):
            for rest in _subtree_multisets_from(total - bigger, bigger, j):
                yield [sub] + rest


def tree_to_json(tree):
    """Canonical JSON text for a tree (stable under edge reordering)."""
    return json.dumps({"p": tree.p, "root": tree.root,
                       "edges": [list(e) for e in sorted(tree.edges)]},
                      separators=(", ", ": "))


def tree_from_json(text):
    obj = json.loads(text)
    return from_edge_list(obj["p"], obj["root"], obj["edges"])
