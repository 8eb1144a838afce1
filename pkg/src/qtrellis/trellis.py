"""Depth-partitioned labeled trellises for group codes over Pauli alphabets.

A trellis has one root, per-level dense integer vertex ids, per-section edge
lists (src, dst, label), and one goal vertex per subcode of the presented
joint code; goal labels are exponent tuples over the joint code's coset
generators.  All construction routes reduce their output (every vertex lies
on a root-to-goal path) and the minimal routes produce biproper trellises.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import (JointCode, PauliMatrix, StabilizerCode, extend_joint,
                   left_index, normalizer_code, restricted_tof, right_index,
                   to_tof)
from .pauli import PauliVector, pauli_mul

LABELS = ("I", "X", "Y", "Z")
LABEL_INDEX = {s: i for i, s in enumerate(LABELS)}
# 4x4 product table in label-index encoding.
MUL = tuple(tuple(LABEL_INDEX[pauli_mul(a, b)] for b in LABELS) for a in LABELS)

_DOT_STYLE = {
    "I": 'color="black", style=solid',
    "X": 'color="red", style=dashed',
    "Y": 'color="forestgreen", style=bold',
    "Z": 'color="blue", style=dotted',
}


class Trellis:
    """Immutable-by-convention trellis; edges are (src, dst, label_index)."""

    def __init__(self, level_sizes, sections, goal_labels,
                 vertex_labels=None, validate=True):
        self.level_sizes = list(level_sizes)
        self.depth = len(self.level_sizes) - 1
        self.sections = [sorted(sec) for sec in sections]
        self.goal_labels = [tuple(g) for g in goal_labels]
        self.vertex_labels = vertex_labels
        if validate:
            self._validate()
        self._arrays = None
        self._lists = None
        self._adj = None

    def _validate(self):
        if self.depth < 1:
            raise ValueError("trellis depth must be at least 1")
        if self.level_sizes[0] != 1:
            raise ValueError("trellis must have a single root")
        if len(self.sections) != self.depth:
            raise ValueError("section count must equal depth")
        if len(self.goal_labels) != self.level_sizes[-1]:
            raise ValueError("one goal label per final-level vertex required")
        if len(set(self.goal_labels)) != len(self.goal_labels):
            raise ValueError("goal labels must be pairwise distinct")
        for t, sec in enumerate(self.sections, start=1):
            for src, dst, lab in sec:
                if not (0 <= src < self.level_sizes[t - 1]
                        and 0 <= dst < self.level_sizes[t]):
                    raise ValueError(f"edge ({src},{dst}) out of range in "
                                     f"section {t}")
                if not 0 <= lab < len(LABELS):
                    raise ValueError(f"bad label index {lab}")

    # -- basic counts ------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return sum(self.level_sizes)

    @property
    def num_edges(self) -> int:
        return sum(len(sec) for sec in self.sections)

    def state_profile(self) -> list[int]:
        return list(self.level_sizes)

    def edge_profile(self) -> list[int]:
        return [len(sec) for sec in self.sections]

    def complexity(self) -> "ComplexityReport":
        v, e = self.num_vertices, self.num_edges
        return ComplexityReport(num_vertices=v, num_edges=e,
                                viterbi_cost=2 * e - v,
                                state_profile=self.state_profile(),
                                edge_profile=self.edge_profile())

    @property
    def num_goals(self) -> int:
        return self.level_sizes[-1]

    # -- structure queries -------------------------------------------------

    def out_adjacency(self, t: int) -> list[list[tuple[int, int]]]:
        """Per source vertex of level t-1: sorted (label, dst) list."""
        adj: list[list[tuple[int, int]]] = \
            [[] for _ in range(self.level_sizes[t - 1])]
        for src, dst, lab in self.sections[t - 1]:
            adj[src].append((lab, dst))
        for lst in adj:
            lst.sort()
        return adj

    def is_biproper(self) -> bool:
        for sec in self.sections:
            if len({(src, lab) for src, _, lab in sec}) != len(sec):
                return False
            if len({(dst, lab) for _, dst, lab in sec}) != len(sec):
                return False
        return True

    def reduced(self) -> "Trellis":
        """Drop vertices/edges not on any root-to-goal path."""
        fwd = [set() for _ in range(self.depth + 1)]
        fwd[0].add(0)
        for t in range(1, self.depth + 1):
            for src, dst, _ in self.sections[t - 1]:
                if src in fwd[t - 1]:
                    fwd[t].add(dst)
        bwd = [set() for _ in range(self.depth + 1)]
        bwd[self.depth] = set(range(self.level_sizes[-1])) & fwd[self.depth]
        for t in range(self.depth, 0, -1):
            for src, dst, _ in self.sections[t - 1]:
                if dst in bwd[t] and src in fwd[t - 1]:
                    bwd[t - 1].add(src)
        keep = bwd
        if all(len(keep[t]) == self.level_sizes[t]
               for t in range(self.depth + 1)):
            return self
        if not keep[0]:
            raise ValueError("trellis has no root-to-goal path")
        remap = []
        for t in range(self.depth + 1):
            ids = sorted(keep[t])
            remap.append({old: new for new, old in enumerate(ids)})
        sections = []
        for t in range(1, self.depth + 1):
            sections.append([(remap[t - 1][s], remap[t][d], l)
                             for s, d, l in self.sections[t - 1]
                             if s in keep[t - 1] and d in keep[t]])
        goals = [self.goal_labels[old] for old in sorted(keep[self.depth])]
        vlabels = None
        if self.vertex_labels is not None:
            vlabels = [[self.vertex_labels[t][old]
                        for old in sorted(keep[t])]
                       for t in range(self.depth + 1)]
        return Trellis([len(remap[t]) for t in range(self.depth + 1)],
                       sections, goals, vlabels)

    # -- transforms --------------------------------------------------------

    def relabeled(self, rho: PauliVector) -> "Trellis":
        """Multiply every section-t label by rho_t (presents the shifted code)."""
        if rho.n != self.depth:
            raise ValueError("relabel vector length must equal trellis depth")
        sections = []
        for t in range(1, self.depth + 1):
            row = MUL[LABEL_INDEX[rho.symbol(t - 1)]]
            sections.append([(s, d, row[l]) for s, d, l in self.sections[t - 1]])
        return Trellis(self.level_sizes, sections, self.goal_labels,
                       self.vertex_labels, validate=False)

    def canonical_form(self):
        """BFS renumbering with outgoing edges ordered by label.

        Two biproper trellises present the same joint code iff their
        canonical forms are equal."""
        new_ids = [dict() for _ in range(self.depth + 1)]
        new_ids[0][0] = 0
        sections_out = []
        for t in range(1, self.depth + 1):
            adj = self.out_adjacency(t)
            order = sorted(new_ids[t - 1], key=new_ids[t - 1].get)
            edges = []
            for old_src in order:
                src = new_ids[t - 1][old_src]
                for lab, old_dst in adj[old_src]:
                    if old_dst not in new_ids[t]:
                        new_ids[t][old_dst] = len(new_ids[t])
                    edges.append((src, new_ids[t][old_dst], lab))
            sections_out.append(tuple(sorted(edges)))
        goals = [None] * len(new_ids[self.depth])
        for old, new in new_ids[self.depth].items():
            goals[new] = self.goal_labels[old]
        return (tuple(self.level_sizes), tuple(sections_out), tuple(goals))

    # -- path enumeration (small trellises / tests) -------------------------

    def paths(self):
        """Yield (symbol tuple, goal id) over all root-to-goal paths."""
        adjs = [self.out_adjacency(t) for t in range(1, self.depth + 1)]
        def rec(t, v, acc):
            if t == self.depth:
                yield acc, v
                return
            for lab, dst in adjs[t][v]:
                yield from rec(t + 1, dst, acc + (LABELS[lab],))
        yield from rec(0, 0, ())

    def words_by_goal(self) -> dict[tuple, set[tuple[str, ...]]]:
        out: dict[tuple, set] = {g: set() for g in self.goal_labels}
        for word, gid in self.paths():
            out[self.goal_labels[gid]].add(word)
        return out

    # -- export -------------------------------------------------------------

    def to_json_dict(self) -> dict:
        levels = []
        for t in range(self.depth + 1):
            verts = []
            for i in range(self.level_sizes[t]):
                entry: dict = {"id": i}
                if self.vertex_labels is not None:
                    entry["label"] = self.vertex_labels[t][i]
                verts.append(entry)
            levels.append({"vertices": verts})
        return {
            "depth": self.depth,
            "levels": levels,
            "sections": [[{"from": s, "to": d, "label": LABELS[l]}
                          for s, d, l in sec] for sec in self.sections],
            "goals": [{"id": i, "logical_label": "".join(map(str, g))}
                      for i, g in enumerate(self.goal_labels)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Trellis":
        level_sizes = [len(lv["vertices"]) for lv in data["levels"]]
        sections = [[(e["from"], e["to"], LABEL_INDEX[e["label"]])
                     for e in sec] for sec in data["sections"]]
        goals = [None] * level_sizes[-1]
        for g in data["goals"]:
            goals[g["id"]] = tuple(int(b) for b in g["logical_label"])
        vlabels = None
        if any("label" in v for lv in data["levels"] for v in lv["vertices"]):
            vlabels = [[v.get("label") for v in lv["vertices"]]
                       for lv in data["levels"]]
        return cls(level_sizes, sections, goals, vlabels)

    def to_dot(self) -> str:
        lines = ["digraph trellis {", "  rankdir=LR;",
                 "  node [shape=circle, fontsize=10];"]
        for t in range(self.depth + 1):
            names = ", ".join(f'"v{t}_{i}"' for i in range(self.level_sizes[t]))
            lines.append(f"  {{ rank=same; {names} }}")
        for i, g in enumerate(self.goal_labels):
            label = "".join(map(str, g))
            if label:
                lines.append(f'  "v{self.depth}_{i}" '
                             f'[shape=doublecircle, xlabel="{label}"];')
            else:
                lines.append(f'  "v{self.depth}_{i}" [shape=doublecircle];')
        for t in range(1, self.depth + 1):
            for s, d, l in self.sections[t - 1]:
                sym = LABELS[l]
                lines.append(f'  "v{t - 1}_{s}" -> "v{t}_{d}" '
                             f'[label="{sym}", {_DOT_STYLE[sym]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- kernel arrays -------------------------------------------------------

    def arrays(self):
        """Per-section (src, dst, label) int arrays for the decode kernels."""
        if self._arrays is None:
            import numpy as np
            self._arrays = [
                (np.array([s for s, _, _ in sec], dtype=np.int64),
                 np.array([d for _, d, _ in sec], dtype=np.int64),
                 np.array([l for _, _, l in sec], dtype=np.int64))
                for sec in self.sections]
        return self._arrays

    def list_arrays(self):
        """Per-section (src, dst, label) plain lists for the Python kernels."""
        if self._lists is None:
            self._lists = [
                ([s for s, _, _ in sec], [d for _, d, _ in sec],
                 [l for _, _, l in sec]) for sec in self.sections]
        return self._lists

    def cached_adjacency(self):
        if self._adj is None:
            self._adj = [self.out_adjacency(t)
                         for t in range(1, self.depth + 1)]
        return self._adj


@dataclass(frozen=True)
class ComplexityReport:
    num_vertices: int
    num_edges: int
    viterbi_cost: int
    state_profile: list[int]
    edge_profile: list[int]

    def triple(self) -> tuple[int, int, int]:
        return (self.num_vertices, self.num_edges, self.viterbi_cost)


# ---------------------------------------------------------------------------
# Elementary constructions


def straight_line(n: int, goal_label=()) -> Trellis:
    sections = [[(0, 0, 0)] for _ in range(n)]
    return Trellis([1] * (n + 1), sections, [tuple(goal_label)])


def trivial_trellis(words: PauliMatrix, goal_labels=None) -> Trellis:
    """One disjoint path per word, sharing the root and (per label) goals."""
    if not words:
        raise ValueError("need at least one word")
    n = words[0].n
    if goal_labels is None:
        goal_labels = [()] * len(words)
    goal_ids: dict[tuple, int] = {}
    for g in goal_labels:
        goal_ids.setdefault(tuple(g), len(goal_ids))
    sizes = [1] + [len(words)] * (n - 1) + [len(goal_ids)]
    sections: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i, (w, g) in enumerate(zip(words, goal_labels)):
        for t in range(1, n + 1):
            src = 0 if t == 1 else i
            dst = goal_ids[tuple(g)] if t == n else i
            sections[t - 1].append((src, dst, LABEL_INDEX[w.symbol(t - 1)]))
    labels = [None] * len(goal_ids)
    for g, i in goal_ids.items():
        labels[i] = g
    return Trellis(sizes, sections, labels).reduced()


def atomic_trellis(g: PauliVector, multi_goal: bool = False) -> Trellis:
    """Minimal trellis of the two-word code {identity, g}.

    Single-goal: the two paths rejoin after the span of g.  Multi-goal: they
    stay apart and end at two goals labeled (0,) and (1,)."""
    n = g.n
    L, R = left_index(g), right_index(g)
    if L == 0:  # identity word
        if multi_goal:
            raise ValueError("multi-goal atomic trellis needs a non-identity word")
        return straight_line(n)
    last = n if multi_goal else R - 1
    sizes = [2 if L <= t <= last else 1 for t in range(n + 1)]
    sections = []
    for t in range(1, n + 1):
        sym = LABEL_INDEX[g.symbol(t - 1)]
        two_before = sizes[t - 1] == 2
        two_after = sizes[t] == 2
        if not two_before and not two_after:
            sections.append([(0, 0, 0)] if t < L or t > R
                            else [(0, 0, 0), (0, 0, sym)])
        elif not two_before and two_after:
            sections.append([(0, 0, 0), (0, 1, sym)])
        elif two_before and two_after:
            sections.append([(0, 0, 0), (1, 1, sym)])
        else:
            sections.append([(0, 0, 0), (1, 0, sym)])
    goals = [(0,), (1,)] if multi_goal else [()]
    return Trellis(sizes, sections, goals)


def shannon_product(t1: Trellis, t2: Trellis) -> Trellis:
    """Sectionwise product: edge pairs multiply labels, goal labels
    concatenate.  Factor-pair ids are kept as vertex metadata."""
    if t1.depth != t2.depth:
        raise ValueError("depth mismatch")
    pair_ids: dict[tuple[int, int], int] = {(0, 0): 0}
    sizes = [1]
    sections = []
    vlabels = [["0.0"]]
    for t in range(1, t1.depth + 1):
        adj1 = t1.out_adjacency(t)
        adj2 = t2.out_adjacency(t)
        next_ids: dict[tuple[int, int], int] = {}
        edges = []
        for (v1, v2), src in sorted(pair_ids.items(), key=lambda kv: kv[1]):
            for lab1, d1 in adj1[v1]:
                for lab2, d2 in adj2[v2]:
                    key = (d1, d2)
                    dst = next_ids.setdefault(key, len(next_ids))
                    edges.append((src, dst, MUL[lab1][lab2]))
        pair_ids = next_ids
        sizes.append(len(next_ids))
        sections.append(edges)
        vlabels.append([f"{a}.{b}" for (a, b), _ in
                        sorted(next_ids.items(), key=lambda kv: kv[1])])
    goals = [None] * len(pair_ids)
    for (g1, g2), i in pair_ids.items():
        goals[i] = t1.goal_labels[g1] + t2.goal_labels[g2]
    return Trellis(sizes, sections, goals, vlabels).reduced()


def product_of(trellises, n: int) -> Trellis:
    out = straight_line(n)
    for t in trellises:
        out = shannon_product(out, t)
    return out


# ---------------------------------------------------------------------------
# BCJR-Wolf construction


def bcjr_wolf(checks: PauliMatrix, alphabet=LABELS) -> Trellis:
    """Complete trellis whose depth-t vertices are the reachable partial
    syndromes against `checks`; goals carry the full syndromes as labels.

    Paths to the goal labeled sigma are exactly the words (over `alphabet`)
    with syndrome sigma; the trellis is biproper for any check matrix."""
    if not checks:
        raise ValueError("empty check matrix")
    n = checks[0].n
    r = len(checks)
    if any(c.n != n for c in checks):
        raise ValueError("check rows must have equal length")
    # delta[t][symbol] = syndrome increment as an r-bit mask
    deltas = []
    for t in range(n):
        col = [c.symbol(t) for c in checks]
        per_symbol = {}
        for sym in alphabet:
            mask = 0
            for i, ci in enumerate(col):
                if sym != "I" and ci != "I" and sym != ci:
                    mask |= 1 << i
            per_symbol[sym] = mask
        deltas.append(per_symbol)
    level: dict[int, int] = {0: 0}
    sizes = [1]
    sections = []
    vlabels = [[_bits_str(0, r)]]
    for t in range(n):
        nxt: dict[int, int] = {}
        edges = []
        for synd, vid in sorted(level.items(), key=lambda kv: kv[1]):
            for sym in alphabet:
                ns = synd ^ deltas[t][sym]
                nid = nxt.setdefault(ns, len(nxt))
                edges.append((vid, nid, LABEL_INDEX[sym]))
        sections.append(edges)
        sizes.append(len(nxt))
        ordered = sorted(nxt.items(), key=lambda kv: kv[1])
        vlabels.append([_bits_str(s, r) for s, _ in ordered])
        level = nxt
    goals = [None] * len(level)
    for synd, vid in level.items():
        goals[vid] = tuple((synd >> i) & 1 for i in range(r))
    return Trellis(sizes, sections, goals, vlabels)


def _bits_str(mask: int, r: int) -> str:
    return "".join(str((mask >> i) & 1) for i in range(r))


def restrict_goals(t: Trellis, keep: dict[int, tuple]) -> Trellis:
    """Keep only the goal ids in `keep` (relabeled by its values); reduce."""
    sizes = list(t.level_sizes)
    sections = [list(sec) for sec in t.sections]
    kept = sorted(keep)
    remap = {old: new for new, old in enumerate(kept)}
    sections[-1] = [(s, remap[d], l) for s, d, l in sections[-1] if d in keep]
    sizes[-1] = len(kept)
    goals = [keep[old] for old in kept]
    vlabels = None
    if t.vertex_labels is not None:
        vlabels = [list(v) for v in t.vertex_labels]
        vlabels[-1] = [vlabels[-1][old] for old in kept]
    return Trellis(sizes, sections, goals, vlabels).reduced()


# ---------------------------------------------------------------------------
# Twin merging


def merge_twins(t: Trellis) -> Trellis:
    """Merge twin vertices until the trellis is biproper.

    Right twins share a predecessor and an edge label, left twins a successor
    and a label; for (joint) group codes the fixpoint is the unique minimal
    trellis.  Goals with distinct labels must never collide."""
    sizes = list(t.level_sizes)
    sections = [list(sec) for sec in t.sections]
    goal_of = {i: lab for i, lab in enumerate(t.goal_labels)}
    while True:
        parents = [list(range(sz)) for sz in sizes]

        def find(level, v):
            p = parents[level]
            while p[v] != v:
                p[v] = p[p[v]]
                v = p[v]
            return v

        def union(level, a, b):
            ra, rb = find(level, a), find(level, b)
            if ra == rb:
                return False
            if level == len(sizes) - 1:
                la, lb = goal_of[ra], goal_of[rb]
                if la != lb:
                    raise RuntimeError(
                        "attempted to merge goals with distinct labels; "
                        "input does not present a rectangular joint code")
            parents[level][max(ra, rb)] = min(ra, rb)
            return True

        merged = False
        for idx, sec in enumerate(sections):
            right: dict[tuple[int, int], int] = {}
            left: dict[tuple[int, int], int] = {}
            for src, dst, lab in sec:
                s, d = find(idx, src), find(idx + 1, dst)
                prev = right.setdefault((s, lab), d)
                if prev != d:
                    merged |= union(idx + 1, prev, d)
                prev = left.setdefault((d, lab), s)
                if prev != s:
                    merged |= union(idx, prev, s)
        if not merged:
            break
        # Rebuild with compressed ids.
        remaps = []
        for level in range(len(sizes)):
            roots = sorted({find(level, v) for v in range(sizes[level])})
            root_id = {r: i for i, r in enumerate(roots)}
            remaps.append({v: root_id[find(level, v)]
                           for v in range(sizes[level])})
            sizes[level] = len(roots)
        goal_of = {remaps[-1][old]: lab for old, lab in goal_of.items()}
        sections = [sorted({(remaps[i][s], remaps[i + 1][d], l)
                            for s, d, l in sec})
                    for i, sec in enumerate(sections)]
    goals = [goal_of[i] for i in range(sizes[-1])]
    return Trellis(sizes, sections, goals).reduced()


# ---------------------------------------------------------------------------
# Code trellises

MULTIGOAL_METHODS = ("extended_shannon", "atomic_multigoal", "bcjr_wolf",
                     "merge")


def build_min_trellis(code: StabilizerCode | JointCode) -> Trellis:
    """Minimal single-goal trellis of the full code (the normalizer for a
    stabilizer code) via the Shannon product of its TOF generators."""
    jc = normalizer_code(code) if isinstance(code, StabilizerCode) else code
    rows = to_tof(jc.sub_gens + jc.coset_gens)
    return product_of([atomic_trellis(g) for g in rows if not g.is_identity()],
                      jc.n)


def build_multigoal_trellis(code: StabilizerCode | JointCode,
                            method: str = "extended_shannon") -> Trellis:
    """Minimal multi-goal trellis of the joint code: one goal per coset of
    the subgroup, labeled by exponents over the coset generators.

    All four methods produce the same trellis up to canonical form."""
    jc = joint_of(code)
    if method == "extended_shannon":
        return _mg_extended(jc)
    if method == "atomic_multigoal":
        return _mg_atomic(jc)
    if method == "bcjr_wolf":
        return _mg_bcjr(jc)
    if method == "merge":
        return _mg_merge(jc)
    raise ValueError(f"unknown method {method!r}; expected one of "
                     f"{MULTIGOAL_METHODS}")


def joint_of(code: StabilizerCode | JointCode) -> JointCode:
    if isinstance(code, JointCode):
        return code
    from .code import joint_code
    return joint_code(code)


def _relabel_exponents(bits: tuple[int, ...], masks: list[int],
                       width: int) -> tuple[int, ...]:
    acc = 0
    for b, m in zip(bits, masks):
        if b:
            acc ^= m
    return tuple((acc >> i) & 1 for i in range(width))


def _mg_extended(jc: JointCode) -> Trellis:
    """Extend the restricted-TOF generators with goal-separating tail
    columns, build the minimal trellis of the extended code, and drop the
    tail sections."""
    sub, coset, masks = restricted_tof(jc.sub_gens, jc.coset_gens)
    m = len(coset)
    if m == 0:
        return build_min_trellis(JointCode(
            n=jc.n, alphabet=jc.alphabet, sub_gens=sub, coset_gens=[],
            membership_checks=jc.membership_checks, label_checks=[]))
    rows = extend_joint(sub, coset)
    t_plus = product_of([atomic_trellis(g) for g in rows
                         if not g.is_identity()], jc.n + m)
    # Cut at boundary n; recover each goal's coset from its forced tail word.
    sizes = t_plus.level_sizes[:jc.n + 1]
    sections = [list(sec) for sec in t_plus.sections[:jc.n]]
    goals = []
    for v in range(sizes[-1]):
        bits = []
        cur = v
        for tail in range(jc.n, jc.n + m):
            outs = [(lab, dst) for src, dst, lab in t_plus.sections[tail]
                    if src == cur]
            if len(outs) != 1:
                raise RuntimeError("ambiguous tail word; extended trellis "
                                   "is not biproper")
            lab, cur = outs[0]
            bits.append(0 if LABELS[lab] == "I" else 1)
        goals.append(_relabel_exponents(tuple(bits), masks, m))
    return Trellis(sizes, sections, goals).reduced()


def _mg_atomic(jc: JointCode) -> Trellis:
    """Shannon product of the subgroup's minimal trellis with multi-goal
    atomic trellises of the (restricted-TOF) coset generators."""
    sub, coset, masks = restricted_tof(jc.sub_gens, jc.coset_gens)
    parts = [atomic_trellis(g) for g in sub if not g.is_identity()]
    parts += [atomic_trellis(g, multi_goal=True) for g in coset]
    t = product_of(parts, jc.n)
    goals = [_relabel_exponents(bits, masks, len(coset))
             for bits in t.goal_labels]
    return Trellis(t.level_sizes, t.sections, goals, t.vertex_labels)


def _mg_bcjr(jc: JointCode) -> Trellis:
    """Complete trellis against [membership; label] checks, restricted to
    the goals with zero membership syndrome."""
    checks = jc.membership_checks + jc.label_checks
    if not checks:
        # Unconstrained single-coset code: plain minimal trellis.
        return build_min_trellis(jc)
    t = bcjr_wolf(checks, alphabet=jc.alphabet)
    rm = len(jc.membership_checks)
    keep = {}
    for gid, bits in enumerate(t.goal_labels):
        if any(bits[:rm]):
            continue
        keep[gid] = jc.bits_to_exps(bits[rm:])
    return restrict_goals(t, keep)


def _mg_merge(jc: JointCode) -> Trellis:
    """Union of relabeled subgroup trellises (one per coset), twin-merged to
    the biproper fixpoint."""
    base = build_min_trellis(JointCode(
        n=jc.n, alphabet=jc.alphabet, sub_gens=jc.sub_gens, coset_gens=[],
        membership_checks=jc.membership_checks, label_checks=[]))
    m = len(jc.coset_gens)
    copies = []
    for idx in range(1 << m):
        exps = tuple((idx >> i) & 1 for i in range(m))
        rep = jc.coset_member(exps)
        copies.append((base.relabeled(rep), exps))
    sizes = [1] + [sum(c.level_sizes[t] for c, _ in copies)
                   for t in range(1, jc.n + 1)]
    sections: list[list[tuple[int, int, int]]] = [[] for _ in range(jc.n)]
    goals = []
    offsets = [0] * (jc.n + 1)  # level 0 (the root) is shared
    for c, exps in copies:
        for t in range(1, jc.n + 1):
            off_src = offsets[t - 1] if t > 1 else 0
            for src, dst, lab in c.sections[t - 1]:
                sections[t - 1].append((src + off_src, dst + offsets[t], lab))
        goals.append(exps)
        for t in range(1, jc.n + 1):
            offsets[t] += c.level_sizes[t]
    union = Trellis(sizes, sections, goals)
    return merge_twins(union)


# ---------------------------------------------------------------------------
# Complexity bounds


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: float
    limit: float
    ok: bool


@dataclass(frozen=True)
class BoundReport:
    checks: list[BoundCheck]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[BoundCheck]:
        return [c for c in self.checks if not c.ok]


def check_bounds(t: Trellis, n: int, k: int, kind: str = "joint") -> BoundReport:
    """Evaluate the state-space and total-size bounds for a minimal trellis.

    kind "joint": quaternary multi-goal trellis of an [[n, k]] code.
    kind "sector": binary sector trellis of an [[n, k]] CSS code.
    kind "code": single-goal trellis of the full normalizer code."""
    checks: list[BoundCheck] = []
    profile = t.state_profile()
    if kind in ("joint", "code"):
        cap = 2 ** (n + k)
        worst = max(profile)
        checks.append(BoundCheck("state_space_2^(n+k)", worst, cap,
                                 worst <= cap))
        for depth, v in enumerate(profile):
            lim = 4 ** min(depth, n + k - depth)
            checks.append(BoundCheck(f"profile_log4[t={depth}]", v, lim,
                                     v <= lim))
        if kind == "joint":
            v_lim = (5 * 2 ** (n + k) - 2 ** (2 * k) - 1) / 3
            e_lim = 4 / 3 * (2 ** (n + k + 1) - 2 ** (2 * k) - 1)
            c_lim = (11 * 2 ** (n + k) - 7 * 2 ** (2 * k) - 7) / 3
            rep = t.complexity()
            checks.append(BoundCheck("total_vertices", rep.num_vertices,
                                     v_lim, rep.num_vertices <= v_lim))
            checks.append(BoundCheck("total_edges", rep.num_edges, e_lim,
                                     rep.num_edges <= e_lim))
            checks.append(BoundCheck("viterbi_cost", rep.viterbi_cost, c_lim,
                                     rep.viterbi_cost <= c_lim))
    elif kind == "sector":
        for depth, v in enumerate(profile):
            lim = 2 ** min(depth, n + k - depth)
            checks.append(BoundCheck(f"profile_log2[t={depth}]", v, lim,
                                     v <= lim))
        half = 2 ** ((n + k) / 2)
        rep = t.complexity()
        v_lim = 3 * half - 2 ** k - 1
        e_lim = 2 * (2 * half - 2 ** k - 1)
        c_lim = 5 * half - 3 * 2 ** k - 3
        checks.append(BoundCheck("total_vertices", rep.num_vertices, v_lim,
                                 rep.num_vertices <= v_lim))
        checks.append(BoundCheck("total_edges", rep.num_edges, e_lim,
                                 rep.num_edges <= e_lim))
        checks.append(BoundCheck("viterbi_cost", rep.viterbi_cost, c_lim,
                                 rep.viterbi_cost <= c_lim))
    else:
        raise ValueError(f"unknown bound kind {kind!r}")
    return BoundReport(checks)
