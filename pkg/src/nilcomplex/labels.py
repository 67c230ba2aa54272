"""Vertex coloring: types, levels, environments, information, flags, letters.

Every vertex gets, per plane it participates in, a role (corner, edge,
side, interior), a saturating level for white vertices, and an environment.
The full vertex letter combines per-plane components with the base-plane
information and the pasting flag; letters are interned into dense ids so
words become integer sequences.

Edge letters are slot names at a vertex: the two halves of the hosting edge
are the main edges "1" and "2" (interior vertices number their creation
edges "1".."4"), non-main edges get the conventional names (u1..u4, l/l2/l3,
r/r2/r3, lu/ld, ru/rd/mid, ld1/ld2/mid1/mid2/d1/d2, corner slots d2/d3/c8),
and a "^" prefix marks an edge that leaves the vertex's own plane into a
pasted one.
"""

from __future__ import annotations

from . import subdivision as sd
from . import chains as chains_mod

ROLE_LETTER = sd.SIDE_ROLE_LETTER

# slot names for interior edges 7 and 8, by the creating tile's position
_E7_NAME = {None: "d2", sd.LEFT_UPPER: "l2", sd.LEFT_LOWER: "ld1",
            sd.MIDDLE: "mid1", sd.RIGHT_UPPER: "u3", sd.RIGHT_LOWER: "r2",
            sd.BOTTOM: "d1"}
_E8_NAME = {None: "c8", sd.LEFT_UPPER: "lu", sd.LEFT_LOWER: "ld",
            sd.MIDDLE: "mid", sd.RIGHT_UPPER: "ru", sd.RIGHT_LOWER: "rd"}
_E8_BOTTOM_NAME = {None: "d3", sd.LEFT_UPPER: "l3", sd.LEFT_LOWER: "ld2",
                   sd.MIDDLE: "mid2", sd.RIGHT_UPPER: "u4",
                   sd.RIGHT_LOWER: "r3", sd.BOTTOM: "d2"}

# interior main-edge numbering: creation edge index -> main number
_MAIN_OF = {
    "A": {1: "1", 4: "2", 3: "3"},
    "B": {2: "1", 6: "2", 5: "3"},
    "C": {4: "1", 5: "2", 8: "3", 7: "4"},
}


def top_ancestor(c, e):
    while e.parent is not None:
        e = c.edges[e.parent]
    return e


def _born_with(c, v, e):
    """Highest ancestor of e having v as an endpoint."""
    prev = e
    while prev.parent is not None:
        par = c.edges[prev.parent]
        if v not in (par.tail, par.head):
            return prev
        prev = par
    return prev


def edge_slot_name(c, v, e):
    """Slot name of current edge `e` at its endpoint `v` (no hat)."""
    if isinstance(e, int):
        e = c.edges[e]
    vx = c.vertices[v]
    born = _born_with(c, v, e)
    if born.parent is not None and c.edges[born.parent].midpoint == v:
        # v is the split point of the parent: e is one of v's main edges
        role = vx.mid_roles.get(e.plane)
        if role is None:
            raise KeyError("no mid role for vertex %d in plane %d"
                           % (v, e.plane))
        if role[0] == "side":
            host = c.edges[role[1]]
            fwd = host.halves[1]  # head half: A-side stays on the right
        else:
            fwd = role[1][1]
        fwd_set = _descendants_at(c, fwd, v)
        return "1" if e.id in fwd_set or e.id == fwd else "2"
    # v is an endpoint of the originally created edge
    orig = top_ancestor(c, e)
    if orig.index is None:
        # plane boundary edge at a corner: outgoing half is main "1"
        return "1" if _leaves_along(c, v, orig, e) else "2"
    k = orig.index
    tile = c.tiles[orig.creator_tile]
    if vx.internal_role is not None and vx.internal_role[0] == tile.id:
        return _MAIN_OF[vx.internal_role[1]][k]
    if k == 1:
        return "u2"
    if k == 2:
        return "u1"
    if k == 3:
        return "l"
    if k == 6:
        return "r"
    if k == 7:
        return _E7_NAME[tile.position]
    if k == 8:
        if tile.position == sd.BOTTOM:
            parent = c.tiles[tile.parent]
            return _E8_BOTTOM_NAME[parent.position]
        return _E8_NAME[tile.position]
    raise AssertionError("unnamed slot: edge %d at vertex %d" % (e.id, v))


def _descendants_at(c, eid, v):
    out = set()
    stack = [eid]
    while stack:
        cur = c.edges[stack.pop()]
        if v in (cur.tail, cur.head):
            out.add(cur.id)
            if cur.is_split:
                stack.extend(cur.halves)
    return out


def _leaves_along(c, v, orig, e):
    """True if e points away from v along orig's canonical direction."""
    cur = e
    while cur.id != orig.id:
        cur = c.edges[cur.parent]
    # v must be an endpoint of orig; outgoing means v is orig's tail side
    return orig.tail == v


def out_letter(c, v, e):
    """Edge letter of `e` leaving/entering `v`, hatted if it lives in a
    pasted plane other than v's base plane."""
    if isinstance(e, int):
        e = c.edges[e]
    name = edge_slot_name(c, v, e)
    if e.plane != c.vertices[v].base_plane:
        return "^" + name
    return name


# -- per-plane roles ----------------------------------------------------------


def planes_of(c, v):
    vx = c.vertices[v]
    out = {vx.base_plane}
    out.update(vx.corner_roles)
    out.update(vx.mid_roles)
    return sorted(out)


def type_in_plane(c, v, plane):
    vx = c.vertices[v]
    corner = vx.corner_roles.get(plane)
    if corner is not None:
        return corner
    if vx.internal_role is not None:
        tile = c.tiles[vx.internal_role[0]]
        if tile.plane == plane:
            return vx.internal_role[1]
    role = vx.mid_roles.get(plane)
    if role is None:
        raise KeyError("vertex %d plays no role in plane %d" % (v, plane))
    if role[0] == "side":
        (t1, s1), (t2, s2) = role[2], role[3]
        return ROLE_LETTER[s1] + ROLE_LETTER[s2]
    return ROLE_LETTER[role[3]]


def level_in_plane(c, v, plane):
    vx = c.vertices[v]
    if plane in vx.corner_roles:
        return None
    if vx.internal_role is not None and \
            c.tiles[vx.internal_role[0]].plane == plane:
        return None
    role = vx.mid_roles.get(plane)
    if role is None:
        raise KeyError("vertex %d plays no role in plane %d" % (v, plane))
    return min(3, c.rounds - role[4] + 1)


def classify_vertex(c, v):
    """Base-plane type plus the role of v in every other plane it bounds."""
    base = c.vertices[v].base_plane
    other = {p: type_in_plane(c, v, p) for p in planes_of(c, v) if p != base}
    return type_in_plane(c, v, base), other


def mark_of(c, v, plane):
    vx = c.vertices[v]
    if plane in vx.corner_roles:
        return ("boundary", sd.ROOT_ENV)
    if vx.internal_role is not None and \
            c.tiles[vx.internal_role[0]].plane == plane:
        return ("env", c.tiles[vx.internal_role[0]].env)
    role = vx.mid_roles[plane]
    if role[0] == "side":
        return ("pair", c.tiles[role[2][0]].env, c.tiles[role[3][0]].env)
    return ("env", c.tiles[role[2]].env)


_CHAIN_TYPES = {"UL", "LU", "UR", "RU", "LD", "DL", "U", "L"}


def chain_environment(c, ch):
    return tuple(mark_of(c, m, ch.plane) for m in ch.members)


def environment_of(c, v, plane):
    cache = _cache(c, "env")
    key = (v, plane)
    if key not in cache:
        cache[key] = _environment_of(c, v, plane)
    return cache[key]


def _environment_of(c, v, plane):
    t = type_in_plane(c, v, plane)
    if t in ("RD", "DR"):
        role = c.vertices[v].mid_roles[plane]
        kind = int(c.edges[role[1]].tag)
        if kind not in sd.RD_EDGE_KINDS:
            raise AssertionError("RD vertex on edge kind %d" % kind)
        return ("rd-edge", kind)
    if t in _CHAIN_TYPES:
        ch = chains_mod.chain_of(c, v, plane)
        if ch is not None:
            return ("chain", chain_environment(c, ch),
                    chains_mod.member_pointer(c, ch, v))
    return ("mark",) + mark_of(c, v, plane)


def extended_environment(c, v):
    """(environment w.r.t. the pasted plane or None, base environment).

    Pasting cores carry both a boundary role on some glued path and the
    corner role of their own pasted tile; the non-corner role wins, matching
    the convention that a core's own pasted mark is the constant corner one.
    """
    vx = c.vertices[v]
    base = vx.base_plane
    mid = sorted(p for p in vx.mid_roles if p != base)
    corner = sorted(p for p in vx.corner_roles if p != base)
    if len(mid) > 1 or (not mid and len(corner) > 1):
        raise AssertionError(
            "vertex %d lies on several pasted boundaries" % v)
    plane = mid[0] if mid else (corner[0] if corner else None)
    part = environment_of(c, v, plane) if plane is not None else None
    return (part, environment_of(c, v, base))


# -- bosses and information -----------------------------------------------------


def _host_tile_and_location(c, v):
    """Minimal tile strictly containing v, plus v's location tag.

    Location is 'A'/'B'/'C' for interior vertices or the interior-edge index
    (int) for side vertices; None for everything else.
    """
    vx = c.vertices[v]
    if vx.internal_role is not None:
        tile = c.tiles[vx.internal_role[0]]
        return tile, vx.internal_role[1]
    role = vx.mid_roles.get(vx.base_plane)
    if role is not None and role[0] == "side":
        host = c.edges[role[1]]
        return c.tiles[host.creator_tile], host.index
    return None, None


def top_side_mid(c, tile):
    """Vertex in the middle of the tile's top side."""
    if tile.sides:
        return c.edges[tile.sides["top"]].midpoint
    rec = c.planes[tile.plane].pasting
    a, b = (c.edges[e] for e in rec.top_edges)
    return ({a.tail, a.head} & {b.tail, b.head}).pop()


def first_boss(c, v):
    tile, _ = _host_tile_and_location(c, v)
    if tile is None:
        return None
    return top_side_mid(c, tile)


def second_boss(c, v):
    tile, loc = _host_tile_and_location(c, v)
    if tile is None:
        return None
    if loc in ("B", 2, 5, 6):
        return tile.corners[2]
    if loc in ("C", 7, 8):
        return tile.corners[3]
    return None


def third_boss(c, v):
    tile, loc = _host_tile_and_location(c, v)
    if tile is None or loc not in ("C", 7, 8):
        return None
    return tile.corners[2]


def boss_data(c, b):
    base = c.vertices[b].base_plane
    return (type_in_plane(c, b, base), level_in_plane(c, b, base),
            extended_environment(c, b))


def information_of(c, v):
    cache = _cache(c, "info")
    if v not in cache:
        cache[v] = _information_of(c, v)
    return cache[v]


def _information_of(c, v):
    vx = c.vertices[v]
    base = vx.base_plane
    corner = vx.corner_roles.get(base)
    if corner is not None:
        if corner != "CDR":
            return ()
        root = c.tiles[c.planes[base].root]
        return ("cdl-boss", boss_data(c, root.corners[3]))
    tile, loc = _host_tile_and_location(c, v)
    if tile is None:
        return ()          # edge vertices carry no information
    if loc in ("A", 1, 3, 4):
        return ("one", boss_data(c, first_boss(c, v)))
    if loc in ("B", 2, 5, 6):
        return ("two", boss_data(c, first_boss(c, v)),
                type_in_plane(c, second_boss(c, v), base))
    return ("three", boss_data(c, first_boss(c, v)),
            boss_data(c, second_boss(c, v)),
            boss_data(c, third_boss(c, v)))


# -- pasting flags ----------------------------------------------------------------


def pasting_flag_of(c, v):
    cache = _cache(c, "flag")
    if v not in cache:
        cache[v] = _pasting_flag_of(c, v)
    return cache[v]


def _pasting_flag_of(c, v):
    w = v
    plane = c.vertices[w].base_plane
    while plane != 0:
        rec = c.planes[plane].pasting
        border = c.tile_border_vertices(c.planes[plane].root)
        if w not in border:
            core = rec.core
            return (type_in_plane(c, core, c.vertices[core].base_plane),
                    environment_of(c, core, c.vertices[core].base_plane),
                    information_of(c, core), rec.e1, rec.e2)
        if c.vertices[w].base_plane == plane:
            # fresh boundary vertex (right/bottom side of the pasted tile):
            # containment in outer tiles goes through the attachment core
            w = rec.core
        plane = c.planes[plane].parent_plane
    return None


# -- letters ---------------------------------------------------------------------


def vertex_letter(c, v, in_plane, out_plane):
    """Full vertex code for a path visiting v from `in_plane` and leaving
    into `out_plane` (either may be None at path ends)."""
    base = c.vertices[v].base_plane
    comps = []
    if in_plane is not None and in_plane != base:
        _check_incident(c, v, in_plane)
        comps.append(in_plane)
    comps.append(base)
    if out_plane is not None and out_plane != base:
        _check_incident(c, v, out_plane)
        comps.append(out_plane)
    types = tuple(type_in_plane(c, v, p) for p in comps)
    levels = tuple(level_in_plane(c, v, p) for p in comps)
    envs = tuple(environment_of(c, v, p) for p in comps)
    return (types, levels, envs, information_of(c, v), pasting_flag_of(c, v))


def _check_incident(c, v, plane):
    if plane not in planes_of(c, v):
        raise KeyError("plane %d not incident to vertex %d" % (plane, v))


def _cache(c, name):
    store = getattr(c, "_label_caches", None)
    if store is None or store[0] != c.rounds:
        store = (c.rounds, {})
        setattr(c, "_label_caches", store)
    return store[1].setdefault(name, {})


class LetterTable:
    """Interning of vertex and edge letters into dense ids."""

    def __init__(self):
        self._by_value = {}
        self._values = []

    def intern(self, family, payload):
        key = (family, payload)
        got = self._by_value.get(key)
        if got is None:
            got = len(self._values)
            self._by_value[key] = got
            self._values.append(key)
        return got

    def value(self, letter_id):
        return self._values[letter_id]

    def family(self, letter_id):
        return self._values[letter_id][0]

    def __len__(self):
        return len(self._values)

    def dump(self):
        return [{"id": i, "family": fam, "payload": repr(payload)}
                for i, (fam, payload) in enumerate(self._values)]


def label_dump(c, table=None):
    """Per-vertex labels for the JSON export."""
    table = table if table is not None else LetterTable()
    rows = []
    for v in range(len(c.vertices)):
        base = c.vertices[v].base_plane
        letter = vertex_letter(c, v, None, None)
        rows.append({
            "id": v,
            "type": type_in_plane(c, v, base),
            "level": level_in_plane(c, v, base),
            "env": repr(environment_of(c, v, base)),
            "info": repr(information_of(c, v)),
            "flag": repr(pasting_flag_of(c, v)),
            "letter_id": table.intern("Y", letter),
        })
    return rows, table
