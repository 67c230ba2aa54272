"""Chains: same-size macrotiles sharing an upper-left corner.

For a vertex X and a tile generation g, the chain of level k consists of the
gen-g tiles whose UL corner is X (k counted from the generation of the tile X
belongs to), together with the side vertices in the middle of their top and
left sides.  Members are ordered by walking the tiles clockwise: the tile
whose top side carries the next member is the one whose top edge equals the
previous tile's left edge, and the first member sits on the exit edge that
comes first in the center's clockwise slot order (the walk realizes that
order, so a plain walk from the canonical start tile suffices).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Chain:
    center: int
    plane: int
    level: int
    gen: int
    tiles: tuple          # tile ids in walk order
    members: tuple        # member vertex ids in walk order
    closed: bool


def _ul_index(c):
    key = "_ul_tile_index"
    cached = getattr(c, key, None)
    if cached is not None and cached[0] == c.rounds:
        return cached[1]
    index = {}
    for t in c.tiles:
        index.setdefault((t.plane, t.gen, t.corners[0]), []).append(t.id)
    setattr(c, key, (c.rounds, index))
    return index


def anchor_gen(c, v, plane):
    """Generation of the tile the chain numbering is anchored to.

    White vertices anchor at the tiles in whose side middles they lie (one
    generation below the edge's creator), interior ones at their creation
    tile, root corners one above the root itself.
    """
    vx = c.vertices[v]
    if vx.internal_role is not None:
        tile = c.tiles[vx.internal_role[0]]
        if tile.plane == plane:
            return tile.gen
    role = vx.mid_roles.get(plane)
    if role is not None:
        if role[0] == "side":
            return c.tiles[role[2][0]].gen
        # boundary midpoint: anchored to the tile whose side it halves
        return c.tiles[role[2]].gen
    if plane in vx.corner_roles:
        # plane-root corners: the root itself carries the level-0 chain
        return -1
    raise KeyError("vertex %d plays no role in plane %d" % (v, plane))


def chain_at_level(c, center, plane, level):
    gen = anchor_gen(c, center, plane) + level + 1
    tiles = _ul_index(c).get((plane, gen, center))
    if not tiles:
        return None
    return _assemble(c, center, plane, level, gen, tiles)


def chains_of_center(c, center, plane):
    """All materialized chains centered at `center` in `plane`."""
    base = anchor_gen(c, center, plane)
    out = []
    index = _ul_index(c)
    gen = base + 1
    while True:
        tiles = index.get((plane, gen, center))
        if not tiles:
            if gen - base > c.rounds + 1:
                break
            gen += 1
            continue
        ch = _assemble(c, center, plane, gen - base - 1, gen, tiles)
        if ch is not None:
            out.append(ch)
        gen += 1
    return out


def rotation_at(c, v, plane):
    """Current edge ids around v in this plane, clockwise, starting at the
    main-1 slot edge.  Derived from leaf corner cycles: sweeping clockwise,
    a face's leaving side at v is followed by its entering side."""
    from .labels import edge_slot_name
    succ = {}
    pred = {}
    for tid in c.vertex_leaves().get(v, ()):
        t = c.tiles[tid]
        if t.plane != plane:
            continue
        i = t.corners.index(v)
        entering = t.sides[("left", "top", "right", "bottom")[i]]
        leaving = t.sides[("top", "right", "bottom", "left")[i]]
        succ[leaving] = entering
        pred[entering] = leaving
    if not succ:
        return []
    starts = [e for e in succ if e not in pred]
    cur = starts[0] if starts else min(succ)
    order = []
    while cur is not None and cur not in order:
        order.append(cur)
        cur = succ.get(cur)
    anchor = [i for i, e in enumerate(order)
              if edge_slot_name(c, v, c.edges[e]) == "1"]
    if anchor:
        i = anchor[0]
        order = order[i:] + order[:i]
    return order


def _assemble(c, center, plane, level, gen, tile_ids):
    tiles = [c.tiles[t] for t in tile_ids]
    if len(tiles) == 1 and not tiles[0].sides:
        # pasted root: single-tile chain, members are its top/left mids
        rec = c.planes[plane].pasting
        u = _shared_vertex(c, rec.top_edges)
        l = _shared_vertex(c, rec.left_edges)
        return Chain(center, plane, level, gen, (tiles[0].id,), (u, l), False)
    by_top = {t.sides["top"]: t for t in tiles}
    by_left = {t.sides["left"]: t for t in tiles}
    # members exist once the tiles' sides are split
    if any(not c.edges[t.sides["top"]].is_split
           or not c.edges[t.sides["left"]].is_split for t in tiles):
        return None
    # walk arcs: the successor of a tile is the one whose top side is its
    # left side; several arcs may surround the center
    starts = [t for t in tiles if t.sides["top"] not in by_left]
    closed = not starts
    arcs = []
    seen = set()
    for first in sorted(starts, key=lambda t: t.id) or \
            sorted(tiles, key=lambda t: t.id):
        if first.id in seen:
            continue
        arc = []
        cur = first
        while cur is not None and cur.id not in seen:
            seen.add(cur.id)
            arc.append(cur)
            cur = by_top.get(cur.sides["left"])
        arcs.append(arc)
    if len(seen) != len(tiles):
        for t in sorted(tiles, key=lambda t: t.id):
            if t.id not in seen:
                arc = []
                cur = t
                while cur is not None and cur.id not in seen:
                    seen.add(cur.id)
                    arc.append(cur)
                    cur = by_top.get(cur.sides["left"])
                arcs.append(arc)
    if len(arcs) > 1 or not closed:
        pos = {e: i for i, e in enumerate(rotation_at(c, center, plane))}
        arcs.sort(key=lambda arc: pos.get(
            c.descendant_half(arc[0].sides["top"], center).id, len(pos)))
    else:
        # single closed cycle: rotate so the first member sits earliest
        pos = {e: i for i, e in enumerate(rotation_at(c, center, plane))}
        arc = arcs[0]
        best = min(range(len(arc)), key=lambda i: pos.get(
            c.descendant_half(arc[i].sides["top"], center).id, len(pos)))
        arcs[0] = arc[best:] + arc[:best]
    order = []
    members = []
    for arc in arcs:
        order.extend(arc)
        members.extend(c.edges[t.sides["top"]].midpoint for t in arc)
        if not closed:
            members.append(c.edges[arc[-1].sides["left"]].midpoint)
    return Chain(center, plane, level, gen, tuple(t.id for t in order),
                 tuple(members), closed)


def _shared_vertex(c, edge_pair):
    a, b = (c.edges[e] for e in edge_pair)
    common = {a.tail, a.head} & {b.tail, b.head}
    if len(common) != 1:
        raise AssertionError("glued side edges do not chain")
    return common.pop()


def chain_of(c, v, plane):
    """The unique chain containing `v` as a member in `plane`, or None."""
    vx = c.vertices[v]
    role = vx.mid_roles.get(plane)
    if role is None:
        return None
    host_tile = None
    if role[0] == "side":
        for tile_id, side in (role[2], role[3]):
            if side in ("top", "left"):
                host_tile = c.tiles[tile_id]
                break
    else:
        if role[3] in ("top", "left"):
            host_tile = c.tiles[role[2]]
    if host_tile is None:
        return None
    center = host_tile.corners[0]
    level = host_tile.gen - anchor_gen(c, center, plane) - 1
    ch = chain_at_level(c, center, plane, level)
    if ch is None or v not in ch.members:
        raise AssertionError("chain lookup lost its own member")
    return ch


def pointer_of(c, v, plane):
    """Exit-slot name at the chain center for member `v`."""
    from .labels import edge_slot_name
    ch = chain_of(c, v, plane)
    if ch is None:
        raise KeyError("vertex %d is not a chain member in plane %d"
                       % (v, plane))
    return member_pointer(c, ch, v)


def member_pointer(c, ch, v):
    from .labels import edge_slot_name
    host = c.vertices[v].mid_roles[ch.plane]
    if host[0] == "side":
        exit_edge = c.edges[host[1]]
    else:
        # boundary member: its hosting side edge; both refs share the parent
        exit_edge = c.edges[host[1][0]]
        while exit_edge.parent is not None and \
                ch.center not in (exit_edge.tail, exit_edge.head):
            exit_edge = c.edges[exit_edge.parent]
    if ch.center not in (exit_edge.tail, exit_edge.head):
        raise AssertionError("member does not sit on a center exit edge")
    return edge_slot_name(c, ch.center, c.descendant_half(exit_edge.id,
                                                          ch.center))
