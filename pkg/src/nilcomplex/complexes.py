"""Construction of the square-complex family.

A complex is grown from a single square by alternating two operations:

* ``subdivide`` splits every current face into six subtiles per the template
  in :mod:`nilcomplex.subdivision`;
* ``apply_pastings`` glues fresh two-generation tiles ("pasted macrotiles")
  onto selected length-4 paths, each in its own plane.

Everything is kept explicit: vertices, edges (with canonical directions so
that A-sides of interior edges are recoverable), the full macrotile tree per
plane, and pasting records.  Construction is deterministic: ids are assigned
in creation order and every loop runs in id order, so rebuilding a level
yields an identical complex and growing it further never renames anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque

from . import subdivision as sd

CORNER_NAMES = ("CUL", "CUR", "CDR", "CDL")

# Forward endpoint of a clockwise boundary walk, per side.
_SIDE_FORWARD_CORNER = {"top": 1, "right": 2, "bottom": 3, "left": 0}


class BuildError(Exception):
    pass


class ResourceCapExceeded(BuildError):
    pass


@dataclass
class Vertex:
    id: int
    base_plane: int
    round_created: int
    # plane id -> corner name, for plane-root corners
    corner_roles: dict = field(default_factory=dict)
    # (tile id, 'A'|'B'|'C') for interior vertices
    internal_role: tuple | None = None
    # plane id -> ('side', edge, (tileA, roleA), (tileB, roleB), round)
    #          or ('edge', (back half, forward half), tile, role, round)
    mid_roles: dict = field(default_factory=dict)


@dataclass
class Edge:
    id: int
    tail: int
    head: int
    plane: int
    tag: str                      # 'left','top','right','bottom' or '1'..'8'
    creator_tile: int | None      # tile whose subdivision created it
    index: int | None             # 1..8 for interior edges
    round_created: int
    parent: int | None = None
    halves: tuple | None = None   # (tail half, head half) once split
    midpoint: int | None = None
    consumed: bool = False        # lies on some glued path

    def other(self, v):
        return self.head if v == self.tail else self.tail

    @property
    def is_split(self):
        return self.halves is not None


@dataclass
class Tile:
    id: int
    plane: int
    env: tuple
    position: str | None          # None for plane roots
    parent: int | None
    corners: tuple                # (UL, UR, DR, DL) vertex ids
    sides: dict                   # side -> edge id at creation ({} for pasted roots)
    gen: int
    round_created: int
    children: tuple = ()
    abc: dict | None = None       # 'A'|'B'|'C' -> vertex id after subdivision
    internal_edges: dict | None = None  # index -> edge id

    @property
    def is_leaf(self):
        return not self.children


@dataclass
class PastingRecord:
    core: int
    e1: str                       # slot name of the top-side exit at the core
    e2: str                       # slot name of the left-side exit
    tile: int
    plane: int
    round_applied: int
    top_edges: tuple              # two host edge ids, core outwards
    left_edges: tuple


@dataclass
class Plane:
    id: int
    root: int
    parent_plane: int | None = None
    pasting: PastingRecord | None = None


class Complex:
    """A built complex.  Treat instances as immutable once grown."""

    def __init__(self, level_cap=5, face_cap=10 ** 6, pasting_mode="recursive"):
        if pasting_mode not in ("recursive", "base-only", "none"):
            raise ValueError("unknown pasting mode: %r" % pasting_mode)
        self.level_cap = level_cap
        self.face_cap = face_cap
        self.pasting_mode = pasting_mode
        self.vertices = []
        self.edges = []
        self.tiles = []
        self.planes = []
        self.pastings = []
        self.rounds = 0
        self._leaf_cache_round = -1
        self._vertex_leaves = {}
        self._current_edge_cache_round = -1
        self._vertex_edges = {}
        self._make_base_square()

    # -- construction primitives ------------------------------------------

    def _new_vertex(self, base_plane):
        v = Vertex(len(self.vertices), base_plane, self.rounds)
        self.vertices.append(v)
        return v

    def _new_edge(self, tail, head, plane, tag, creator_tile, index):
        e = Edge(len(self.edges), tail, head, plane, tag, creator_tile,
                 index, self.rounds)
        self.edges.append(e)
        return e

    def _new_tile(self, plane, env, position, parent, corners, sides, gen):
        t = Tile(len(self.tiles), plane, env, position, parent, corners,
                 sides, gen, self.rounds)
        self.tiles.append(t)
        return t

    def _make_base_square(self):
        vs = [self._new_vertex(0) for _ in range(4)]
        ul, ur, dr, dl = (v.id for v in vs)
        top = self._new_edge(ul, ur, 0, "top", None, None)
        right = self._new_edge(ur, dr, 0, "right", None, None)
        bottom = self._new_edge(dr, dl, 0, "bottom", None, None)
        left = self._new_edge(dl, ul, 0, "left", None, None)
        root = self._new_tile(0, sd.ROOT_ENV, None, None, (ul, ur, dr, dl),
                              {"left": left.id, "top": top.id,
                               "right": right.id, "bottom": bottom.id}, 0)
        self.planes.append(Plane(0, root.id))
        for v, name in zip(vs, CORNER_NAMES):
            v.corner_roles[0] = name

    # -- views --------------------------------------------------------------

    @property
    def level(self):
        return self.rounds + 1

    def leaves(self):
        return [t for t in self.tiles if t.is_leaf]

    def minimal_squares(self):
        """Every bounded quadrilateral face of every plane, exactly once."""
        return self.leaves()

    def current_edges(self):
        return [e for e in self.edges if not e.is_split]

    def vertex_edges(self):
        """vertex id -> sorted current edge ids (cached per round)."""
        if self._current_edge_cache_round != self.rounds:
            m = {}
            for e in self.edges:
                if e.is_split:
                    continue
                m.setdefault(e.tail, []).append(e.id)
                m.setdefault(e.head, []).append(e.id)
            self._vertex_edges = {v: sorted(es) for v, es in m.items()}
            self._current_edge_cache_round = self.rounds
        return self._vertex_edges

    def vertex_leaves(self):
        """vertex id -> leaf tile ids having it as a corner (cached)."""
        if self._leaf_cache_round != self.rounds:
            m = {}
            for t in self.tiles:
                if t.is_leaf:
                    for v in t.corners:
                        m.setdefault(v, []).append(t.id)
            self._vertex_leaves = m
            self._leaf_cache_round = self.rounds
        return self._vertex_leaves

    def plane_vertices(self, plane_id):
        seen = set()
        for t in self.tiles:
            if t.plane == plane_id and t.is_leaf:
                seen.update(t.corners)
        return sorted(seen)

    def descendant_half(self, edge, vertex):
        """Innermost current sub-edge of `edge` incident to `vertex`."""
        e = self.edges[edge]
        while e.is_split:
            a, b = e.halves
            e = self.edges[a] if vertex in (self.edges[a].tail,
                                            self.edges[a].head) else self.edges[b]
        return e

    def side_chain(self, edge):
        """Current sub-edges of `edge`, tail to head."""
        e = self.edges[edge]
        if not e.is_split:
            return [e.id]
        return self.side_chain(e.halves[0]) + self.side_chain(e.halves[1])

    # -- subdivision ---------------------------------------------------------

    def _split_edge(self, e):
        if e.is_split:
            return
        m = self._new_vertex(e.plane)
        h1 = self._new_edge(e.tail, m.id, e.plane, e.tag, e.creator_tile, e.index)
        h2 = self._new_edge(m.id, e.head, e.plane, e.tag, e.creator_tile, e.index)
        h1.parent = h2.parent = e.id
        h1.consumed = h2.consumed = e.consumed
        e.halves = (h1.id, h2.id)
        e.midpoint = m.id

    def _record_mid_roles(self, e, flanks):
        """Register the role of e's midpoint in every plane flanking e."""
        m = self.vertices[e.midpoint]
        by_plane = {}
        for tile, side in flanks:
            by_plane.setdefault(tile.plane, []).append((tile, side))
        for plane, pairs in sorted(by_plane.items()):
            if len(pairs) == 2:
                (t1, s1), (t2, s2) = pairs
                tag1 = t1.env[sd.SIDES.index(s1)]
                if tag1.endswith("A"):
                    a, b = (t1.id, s1), (t2.id, s2)
                else:
                    a, b = (t2.id, s2), (t1.id, s1)
                m.mid_roles[plane] = ("side", e.id, a, b, self.rounds)
            else:
                (t1, s1), = pairs
                fwd_corner = t1.corners[_SIDE_FORWARD_CORNER[s1]]
                h1, h2 = e.halves
                if fwd_corner in (self.edges[h1].tail, self.edges[h1].head):
                    back, fwd = h2, h1
                else:
                    back, fwd = h1, h2
                m.mid_roles[plane] = ("edge", (back, fwd), t1.id, s1,
                                      self.rounds)

    def _subdivide_tile(self, tile, halves, mids):
        """Create the six children of `tile`.

        halves: side -> {corner vertex id: edge id} giving the sub-edge of
        that side adjacent to each of its end corners.  mids: side -> vertex
        id of the side midpoint.
        """
        plane = tile.plane
        verts = {"UL": tile.corners[0], "UR": tile.corners[1],
                 "DR": tile.corners[2], "DL": tile.corners[3],
                 "U": mids["top"], "R": mids["right"],
                 "D": mids["bottom"], "L": mids["left"]}
        for name in ("A", "B", "C"):
            v = self._new_vertex(plane)
            v.internal_role = (tile.id, name)
            verts[name] = v.id
        new_edges = {}
        for k, (tname, hname) in sd.EDGE_ENDPOINTS.items():
            new_edges[k] = self._new_edge(verts[tname], verts[hname], plane,
                                          str(k), tile.id, k).id
        children = []
        for pos in sd.POSITIONS:
            corners = tuple(verts[n] for n in sd.FACE_CORNERS[pos])
            sides = {}
            for side in sd.SIDES:
                spec = sd.FACE_SIDES[pos][side]
                if spec[0] == "new":
                    sides[side] = new_edges[spec[1]]
                else:
                    _, pside, corner = spec
                    sides[side] = halves[pside][verts[corner]]
            env = sd.child_env(tile.env, pos)
            children.append(self._new_tile(plane, env, pos, tile.id, corners,
                                           sides, tile.gen + 1))
        tile.children = tuple(ch.id for ch in children)
        tile.abc = {n: verts[n] for n in ("A", "B", "C")}
        tile.internal_edges = dict(new_edges)

    def subdivide(self):
        """One global subdivision round (all planes, all faces)."""
        leaves = self.leaves()
        if 6 * len(leaves) > self.face_cap:
            raise ResourceCapExceeded("face cap %d exceeded" % self.face_cap)
        self.rounds += 1
        flank_map = {}
        for t in leaves:
            for side, eid in t.sides.items():
                flank_map.setdefault(eid, []).append((t, side))
        for eid in sorted(flank_map):
            self._split_edge(self.edges[eid])
            self._record_mid_roles(self.edges[eid], flank_map[eid])
        for t in leaves:
            halves = {}
            mids = {}
            for side, eid in t.sides.items():
                e = self.edges[eid]
                entry = {}
                for h in e.halves:
                    far = self.edges[h].other(e.midpoint)
                    entry[far] = h
                halves[side] = entry
                mids[side] = e.midpoint
            self._subdivide_tile(t, halves, mids)
        return self

    # -- pastings -------------------------------------------------------------

    def _white_level(self, v, plane):
        role = self.vertices[v].mid_roles.get(plane)
        if role is None:
            return None
        return min(3, self.rounds - role[4] + 1)

    def exit_slots(self, v, plane):
        """Ordered candidate exit slot names with their current first edges.

        Main slots come first (by number), then non-main ones; used both by
        the pasting rule and by tests.  Slot naming lives in labels.py; here
        we only need a deterministic order of (slot key, edge) pairs.
        """
        from .labels import edge_slot_name  # local import to avoid a cycle
        out = []
        for eid in self.vertex_edges().get(v, ()):
            e = self.edges[eid]
            if e.plane != plane:
                continue
            name = edge_slot_name(self, v, e)
            out.append((name, eid))
        mains = [p for p in out if p[0].isdigit()]
        others = [p for p in out if not p[0].isdigit()]
        return sorted(mains) + sorted(others)

    def _walk_two(self, v, first_edge):
        """Walk two current edges from v along first_edge's original edge."""
        e = self.edges[first_edge]
        w1 = e.other(v)
        # stay on the same original edge: ancestors share creator/index/tag
        top = e
        while top.parent is not None:
            top = self.edges[top.parent]
        nxt = None
        for eid in self.vertex_edges().get(w1, ()):
            e2 = self.edges[eid]
            if e2.id == e.id:
                continue
            t2 = e2
            while t2.parent is not None:
                t2 = self.edges[t2.parent]
            if t2.id == top.id:
                nxt = e2
                break
        if nxt is None:
            return None
        return (e.id, nxt.id, w1, nxt.other(w1))

    def _distance_ok(self, core, path_vertices):
        """Pasting-distance guard: every strictly containing macrotile whose
        boundary misses the glued path keeps the core at distance >= 2."""
        leaf_tiles = self.vertex_leaves().get(core, ())
        if not leaf_tiles:
            return False
        near = self._ball(core, 1)
        path = set(path_vertices)
        chains = {}
        for tid in leaf_tiles:
            chains.setdefault(self.tiles[tid].plane, tid)
        for tid in chains.values():
            t = self.tiles[tid]
            while t.parent is not None:
                t = self.tiles[t.parent]
                border = self.tile_border_vertices(t.id)
                if core in border or path & border:
                    continue
                if near & border:
                    return False
        return True

    def _ball(self, v, radius):
        seen = {v}
        frontier = [v]
        ve = self.vertex_edges()
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for eid in ve.get(u, ()):
                    w = self.edges[eid].other(u)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    def tile_side_edges(self, tile_id):
        """Top-level edge ids of the tile's four sides."""
        t = self.tiles[tile_id]
        if t.sides:
            return list(t.sides.values())
        # pasted root: glued host edges plus the fresh right/bottom sides
        rec = self.planes[t.plane].pasting
        out = list(rec.top_edges + rec.left_edges)
        out.extend(e.id for e in self.edges
                   if e.plane == t.plane and e.creator_tile is None
                   and e.parent is None)
        return out

    def tile_border_vertices(self, tile_id):
        out = set(self.tiles[tile_id].corners)
        for eid in self.tile_side_edges(tile_id):
            for sub in self.side_chain(eid):
                out.add(self.edges[sub].tail)
                out.add(self.edges[sub].head)
        return out

    def _pasted_roles(self, v):
        vx = self.vertices[v]
        out = set(vx.corner_roles) | set(vx.mid_roles)
        out.discard(vx.base_plane)
        return out

    def _eligible_core(self, v, plane):
        vx = self.vertices[v]
        if any(p in vx.corner_roles for p in self._pasted_roles(v)):
            return False    # already a core or a glued corner
        if vx.corner_roles.get(plane):
            return False
        if vx.internal_role is not None:
            tile = self.tiles[vx.internal_role[0]]
            if tile.plane != plane:
                return False
            return vx.round_created < self.rounds
        role = vx.mid_roles.get(plane)
        if role is None:
            return False
        return self._white_level(v, plane) == 3

    def apply_pastings(self):
        """Attach fresh two-generation tiles per the pasting rule.

        Rule (one pasting per core, disjoint glued paths): every non-corner
        vertex becomes a core once it is old enough (white vertices at level
        3, interior vertices one round after creation) provided no vertex of
        the candidate glued path was ever used by another pasting and the
        pasting-distance guard holds.  Ordered slot pairs are tried starting
        at an id-dependent offset so that different cores exercise different
        edge-pair combinations.
        """
        if self.rounds == 0:
            raise BuildError("complex must be subdivided before pasting")
        if self.pasting_mode == "none":
            return self
        planes = [0] if self.pasting_mode == "base-only" else \
            [p.id for p in self.planes]
        new = []
        used = set()
        for plane in planes:
            for v in self.plane_vertices(plane):
                if v in used or not self._eligible_core(v, plane):
                    continue
                slots = self.exit_slots(v, plane)
                n = len(slots)
                if n < 2:
                    continue
                pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
                off = v % len(pairs)
                pairs = pairs[off:] + pairs[:off]
                for i, j in pairs:
                    w_top = self._walk_two(v, slots[i][1])
                    w_left = self._walk_two(v, slots[j][1])
                    if w_top is None or w_left is None:
                        continue
                    pathv = (v, w_top[2], w_top[3], w_left[2], w_left[3])
                    if len(set(pathv)) != 5:
                        continue
                    # non-core path vertices must be untouched by pastings:
                    # each may bound at most one pasted plane, ever
                    if any(self._pasted_roles(p) for p in pathv[1:]):
                        continue
                    if any(p in used for p in pathv):
                        continue
                    eids = (w_top[0], w_top[1], w_left[0], w_left[1])
                    if any(self.edges[e].consumed for e in eids):
                        continue
                    if not self._distance_ok(v, pathv):
                        continue
                    new.append((v, plane, slots[i][0], slots[j][0],
                                w_top, w_left))
                    used.update(pathv)
                    for e in eids:
                        self.edges[e].consumed = True
                    break
        for core, host_plane, s1, s2, w_top, w_left in new:
            self._paste_tile(core, host_plane, s1, s2, w_top, w_left)
        return self

    def _paste_tile(self, core, host_plane, s1, s2, w_top, w_left):
        plane_id = len(self.planes)
        u_t, cur = w_top[2], w_top[3]
        l_t, cdl = w_left[2], w_left[3]
        r_t = self._new_vertex(plane_id)
        d_t = self._new_vertex(plane_id)
        cdr = self._new_vertex(plane_id)
        # fresh boundary edges, clockwise (interior on the right)
        right1 = self._new_edge(cur, r_t.id, plane_id, "right", None, None)
        right2 = self._new_edge(r_t.id, cdr.id, plane_id, "right", None, None)
        bottom1 = self._new_edge(cdr.id, d_t.id, plane_id, "bottom", None, None)
        bottom2 = self._new_edge(d_t.id, cdl, plane_id, "bottom", None, None)
        root = self._new_tile(plane_id, sd.ROOT_ENV, None, None,
                              (core, cur, cdr.id, cdl), {}, 0)
        rec = PastingRecord(core, s1, s2, root.id, plane_id, self.rounds,
                            (w_top[0], w_top[1]), (w_left[0], w_left[1]))
        self.planes.append(Plane(plane_id, root.id, host_plane, rec))
        self.pastings.append(rec)
        for v, name in zip((core, cur, cdr.id, cdl), CORNER_NAMES):
            self.vertices[v].corner_roles[plane_id] = name
        # boundary-midpoint roles w.r.t. the pasted root; (back, forward)
        # halves follow the clockwise walk of the root's boundary
        for mid, back, fwd, side in (
                (u_t, w_top[0], w_top[1], "top"),
                (r_t.id, right1.id, right2.id, "right"),
                (d_t.id, bottom1.id, bottom2.id, "bottom"),
                (l_t, w_left[1], w_left[0], "left")):
            self.vertices[mid].mid_roles[plane_id] = \
                ("edge", (back, fwd), root.id, side, self.rounds)
        halves = {
            "top": {core: w_top[0], cur: w_top[1]},
            "left": {core: w_left[0], cdl: w_left[1]},
            "right": {cur: right1.id, cdr.id: right2.id},
            "bottom": {cdr.id: bottom1.id, cdl: bottom2.id},
        }
        mids = {"top": u_t, "left": l_t, "right": r_t.id, "bottom": d_t.id}
        self._subdivide_tile(root, halves, mids)

    # -- growth ----------------------------------------------------------------

    def grow_to_level(self, n):
        if n < 1:
            raise BuildError("level must be positive")
        if n > self.level_cap:
            raise ResourceCapExceeded(
                "level %d above cap %d" % (n, self.level_cap))
        while self.level < n:
            self.subdivide()
            if self.pasting_mode != "none":
                self.apply_pastings()
        return self

    # -- queries ----------------------------------------------------------------

    def geodesic_distance(self, u, v):
        if u >= len(self.vertices) or v >= len(self.vertices):
            raise KeyError("vertex not in complex")
        if u == v:
            return 0
        ve = self.vertex_edges()
        dist = {u: 0}
        q = deque([u])
        while q:
            x = q.popleft()
            for eid in ve.get(x, ()):
                y = self.edges[eid].other(x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == v:
                        return dist[y]
                    q.append(y)
        raise KeyError("vertices are not connected")

    def euler_characteristic(self, plane_id):
        vs = set()
        es = set()
        fs = 0
        for t in self.tiles:
            if t.plane != plane_id or not t.is_leaf:
                continue
            fs += 1
            vs.update(t.corners)
            for eid in t.sides.values():
                es.add(eid)
        return len(vs) - len(es) + fs

    # -- exports -----------------------------------------------------------------

    def to_json_dict(self):
        return {
            "level": self.level,
            "vertices": [{"id": v.id, "plane": v.base_plane}
                         for v in self.vertices],
            "edges": [{"a": e.tail, "b": e.head, "plane": e.plane,
                       "type": e.tag}
                      for e in self.edges if not e.is_split],
            "faces": [{"corners": list(t.corners), "position": t.position,
                       "macrotile": t.id}
                      for t in self.tiles if t.is_leaf],
            "pastings": [{"core": p.core, "e1": p.e1, "e2": p.e2,
                          "tile": p.tile}
                         for p in self.pastings],
        }

    def to_dot(self, plane_id=0):
        lines = ["graph plane%d {" % plane_id]
        seen = set()
        for t in self.tiles:
            if t.plane != plane_id or not t.is_leaf:
                continue
            for eid in t.sides.values():
                if eid in seen:
                    continue
                seen.add(eid)
                e = self.edges[eid]
                lines.append('  v%d -- v%d [label="%s"];'
                             % (e.tail, e.head, e.tag))
        lines.append("}")
        return "\n".join(lines)


def new_base_complex(**kwargs):
    return Complex(**kwargs)


def grow_to_level(n, **kwargs):
    return Complex(**kwargs).grow_to_level(n)
