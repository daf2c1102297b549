#!/usr/bin/env python3
"""Reference oracle for the interaction-complex fixtures.

This is an intentionally independent implementation: tuple enumeration and
the adjacency decision are written clause by clause, with no code shared
with the C++ library.  It regenerates every frozen fixture under this
directory and prints the summary numbers that the unit/acceptance tests
assert.  Run from anywhere:

    python3 tests/fixtures/gen_fixtures.py
"""

import json
import os
import sys
from collections import namedtuple
from itertools import combinations

HERE = os.path.dirname(os.path.abspath(__file__))

# ---------------------------------------------------------------- trees

class Tree:
    def __init__(self):
        self.children = []  # node -> ordered child list
        self.parent = []    # node -> parent id, -1 for the planted root

    def add(self, parent):
        nid = len(self.children)
        self.children.append([])
        self.parent.append(parent)
        if parent >= 0:
            self.children[parent].append(nid)
        return nid

    def degree(self, v):
        return len(self.children[v]) + (1 if self.parent[v] >= 0 else 0)


def parse_tree(text):
    """Nested parens; the outermost group is the planted root and must
    contain exactly one child group."""
    text = "".join(text.split())
    t = Tree()
    stack = []
    for ch in text:
        if ch == "(":
            nid = t.add(stack[-1] if stack else -1)
            stack.append(nid)
        elif ch == ")":
            if not stack:
                raise ValueError("unbalanced")
            stack.pop()
        else:
            raise ValueError("bad char %r" % ch)
    if stack:
        raise ValueError("unbalanced")
    if len(t.children) == 0:
        raise ValueError("empty")
    if len(t.children[0]) != 1:
        raise ValueError("planted root must have exactly one child")
    return t


def direction(t, x, y):
    """i >= 1 iff x lies on the y-to-root path and that path leaves x
    through its i-th upward edge; 0 otherwise."""
    assert x != y
    prev, cur = y, t.parent[y]
    while cur >= 0:
        if cur == x:
            return t.children[x].index(prev) + 1
        prev, cur = cur, t.parent[cur]
    return 0


def cores(t):
    return [v for v in range(len(t.children)) if t.degree(v) >= 3]

# ---------------------------------------------------------------- tuples

Vertex = namedtuple("Vertex", "k core p q")


def compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_vertices(t, allow_empty_q=False):
    out = []
    for x in cores(t):
        d = t.degree(x)
        for k in (0, 1, 2):
            max_lp = d - 1 if allow_empty_q else d - 2
            for lp in range(1, max_lp + 1):
                lq = d - 1 - lp
                for sp in range(1, 3 - k + 1):
                    for p in compositions(sp, lp):
                        for q in compositions(3 - k - sp, lq):
                            out.append(Vertex(k, x, p, q))
    out.sort(key=lambda v: (v.core, v.k, v.p, v.q))
    return out


def clause_adjacent(t, v, w, same_core="none", rule3="extended"):
    """Literal clause-by-clause adjacency decision.  Returns (bool, clause)."""
    if v.core == w.core:
        if same_core == "rule1":
            return v.k + w.k >= 4, "same-core"
        return False, "same-core"
    dvw = direction(t, v.core, w.core)
    dwv = direction(t, w.core, v.core)
    if dvw == 0 and dwv == 0:                      # clause 1: not stacked
        return v.k + w.k >= 4, "rule1"
    lower, upper, i = (v, w, dvw) if dvw >= 1 else (w, v, dwv)
    lp = len(lower.p)
    if i <= lp:                                    # clause 2: entry in p
        e = lower.p[i - 1]
        if e > 4 - upper.k:
            return True, "rule2"
        hit = e + upper.k == 4 and any(
            lower.p[j] != 0 for j in range(lp) if j != i - 1)
        return hit, "rule2"
    e = lower.q[i - lp - 1]                        # clause 3: entry in q
    if e > 4 - upper.k:
        return True, "rule3"
    if rule3 == "extended" and e + upper.k == 4:
        return True, "rule3"
    return False, "rule3"


def build(t, same_core="none", rule3="extended", allow_empty_q=False):
    vs = enumerate_vertices(t, allow_empty_q)
    edges = []
    for a, b in combinations(range(len(vs)), 2):
        hit, _ = clause_adjacent(t, vs[a], vs[b], same_core, rule3)
        if hit:
            edges.append((a, b))
    return vs, sorted(edges)


def prune(vs, edges):
    touched = set()
    for a, b in edges:
        touched.add(a)
        touched.add(b)
    keep = [i for i in range(len(vs)) if i in touched]
    remap = {old: new for new, old in enumerate(keep)}
    return ([vs[i] for i in keep],
            sorted((remap[a], remap[b]) for a, b in edges))

# ---------------------------------------------------------------- exports

def export_json(vs, edges):
    doc = {"vertices": [{"id": i, "core": v.core, "k": v.k,
                         "p": list(v.p), "q": list(v.q)}
                        for i, v in enumerate(vs)],
           "edges": [[a, b] for a, b in edges]}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def export_edgelist(edges):
    return "".join("%d %d\n" % e for e in edges)


def export_dot(vs, edges):
    out = ["graph K4T {\n"]
    for i, v in enumerate(vs):
        out.append('  %d [label="(%d,%d,[%s],[%s])"];\n'
                   % (i, v.k, v.core,
                      ",".join(map(str, v.p)), ",".join(map(str, v.q))))
    for a, b in edges:
        out.append("  %d -- %d;\n" % (a, b))
    out.append("}\n")
    return "".join(out)

# ------------------------------------------------- dedupe / peel (stats)

def dedupe(n, edges):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    cls_of, members, keys = {}, [], {}
    for v in range(n):
        key = tuple(sorted(adj[v]))
        if key not in keys:
            keys[key] = len(members)
            members.append([])
        cls_of[v] = keys[key]
        members[cls_of[v]].append(v)
    redges = set()
    for a, b in edges:
        ca, cb = cls_of[a], cls_of[b]
        redges.add((min(ca, cb), max(ca, cb)))
    return members, sorted(redges)


def peel(nclasses, redges, k2_pick_high=False):
    adj = [set() for _ in range(nclasses)]
    for a, b in redges:
        adj[a].add(b)
        adj[b].add(a)
    alive = set(range(nclasses))
    levels = []
    while alive:
        deg = {v: len(adj[v] & alive) for v in alive}
        if len(alive) == 2 and sum(deg.values()) == 2:
            a, b = sorted(alive)
            x, y = (b, a) if k2_pick_high else (a, b)
            levels.append([(x, y)])
            alive.clear()
            continue
        leaves = sorted(v for v in alive if deg[v] == 1)
        if not leaves:
            raise ValueError("no residual leaves")
        pairs = []
        used_y = set()
        for x in leaves:
            (y,) = adj[x] & alive
            if y in leaves:
                raise ValueError("leaf paired with leaf")
            if y in used_y:
                raise ValueError("clique node touches two leaves")
            used_y.add(y)
            pairs.append((x, y))
        for a, b in combinations(sorted(used_y), 2):
            if b not in adj[a]:
                raise ValueError("clique check failed")
        levels.append(pairs)
        alive -= set(leaves) | used_y
    return levels

# ---------------------------------------------------------------- main

FIXTURES = {
    "two_core": "(((()())()))",
    "path3": "((((()())())()))",
    "binary5": "((((()())(()()))(()())))",
    "dr4": "(((()())()()))",
}


def write(name, data):
    path = os.path.join(HERE, name)
    with open(path, "w") as f:
        f.write(data)
    print("wrote %s (%d bytes)" % (name, len(data)))


def main():
    for name, text in FIXTURES.items():
        t = parse_tree(text)
        vs, edges = build(t)
        pv, pe = prune(vs, edges)
        degs = sorted(sum(1 for e in pe if i in e) for i in range(len(pv)))
        members, redges = dedupe(len(pv), pe)
        levels = peel(len(members), redges)
        print("%-8s total=%d pruned=%d edges=%d degrees=%s class_sizes=%s "
              "levels=%s" % (name, len(vs), len(pv), len(pe), degs,
                             sorted(len(m) for m in members),
                             [len(L) for L in levels]))
        write(name + ".pruned.json", export_json(pv, pe))
        write(name + ".pruned.edgelist", export_edgelist(pe))
    # full (unpruned) export for the CLI fixture
    t = parse_tree(FIXTURES["binary5"])
    vs, edges = build(t)
    write("binary5.full.json", export_json(vs, edges))
    t = parse_tree(FIXTURES["two_core"])
    vs, edges = build(t)
    pv, pe = prune(vs, edges)
    write("two_core.pruned.dot", export_dot(pv, pe))

    # enumeration at a degree-3 core, frozen in unit tests
    t = parse_tree(FIXTURES["two_core"])
    vs = [v for v in enumerate_vertices(t) if v.core == 1]
    print("deg3 tuples:", [(v.k, v.p, v.q) for v in vs])

    # single-core stars stay edgeless; rule1 gives the wrong clique size
    for m in range(3, 7):
        star = "((" + "()" * (m - 1) + "))"
        vs, edges = build(parse_tree(star))
        assert not edges, star
        vs, edges = build(parse_tree(star), same_core="rule1")
        k2 = sum(1 for v in vs if v.k == 2)
        print("star m=%d: default edgeless; rule1 k2-clique size %d "
              "(vs m=%d), edges %d" % (m, k2, m, len(edges)))

    # extended-vs-strict boundary: direction-2 child example
    t = parse_tree("(((()(()()))))")
    vs, _ = build(t)
    diffs = []
    for a, b in combinations(range(len(vs)), 2):
        ea, _ = clause_adjacent(t, vs[a], vs[b], rule3="extended")
        eb, _ = clause_adjacent(t, vs[a], vs[b], rule3="strict")
        if ea != eb:
            diffs.append((vs[a], vs[b]))
    print("extended-vs-strict diffs:", diffs)
    return 0


if __name__ == "__main__":
    sys.exit(main())
