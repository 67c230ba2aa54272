"""The fixed 6-subtile subdivision template.

Every square face splits into six quadrilateral subtiles.  The split adds a
midpoint on each of the four sides, three interior vertices (roles A, B, C)
and eight interior edges (indices 1..8, each with a distinguished A-side and
B-side).  The incidence structure below is the single source of truth for the
whole package: face corner cycles, edge endpoints, which side of each new edge
faces which subtile, and how subtile environments inherit from the parent.

Template vertex names: corners ``UL UR DR DL``, side midpoints ``U R D L``
(top, right, bottom, left), interior ``A B C``.

Edges are listed with a canonical direction (tail, head) chosen so that the
A-side lies on the right when walking tail to head; halves of a split edge
inherit the direction and therefore the side assignment.
"""

from __future__ import annotations

# Position tags of the six subtiles.
LEFT_UPPER = "left-upper"
MIDDLE = "middle"
RIGHT_UPPER = "right-upper"
LEFT_LOWER = "left-lower"
RIGHT_LOWER = "right-lower"
BOTTOM = "bottom"

POSITIONS = (LEFT_UPPER, MIDDLE, RIGHT_UPPER, LEFT_LOWER, RIGHT_LOWER, BOTTOM)

SIDES = ("left", "top", "right", "bottom")

BOUNDARY_TAGS = ("left", "top", "right", "bottom")

# Interior edge k: (tail, head) with the A-side on the right of tail->head.
EDGE_ENDPOINTS = {
    1: ("U", "A"),
    2: ("B", "U"),
    3: ("A", "L"),
    4: ("A", "C"),
    5: ("C", "B"),
    6: ("R", "B"),
    7: ("C", "DL"),
    8: ("DR", "C"),
}

# Subtile on the A-side / B-side of each interior edge.
EDGE_A_SIDE = {1: LEFT_UPPER, 2: RIGHT_UPPER, 3: LEFT_UPPER, 4: LEFT_LOWER,
               5: RIGHT_LOWER, 6: RIGHT_UPPER, 7: LEFT_LOWER, 8: RIGHT_LOWER}
EDGE_B_SIDE = {1: MIDDLE, 2: MIDDLE, 3: LEFT_LOWER, 4: MIDDLE,
               5: MIDDLE, 6: RIGHT_LOWER, 7: BOTTOM, 8: BOTTOM}

# Corner cycle (UL, UR, DR, DL) of every subtile, in template vertex names.
# All cycles run clockwise, matching the parent's own (UL, UR, DR, DL).
FACE_CORNERS = {
    LEFT_UPPER: ("UL", "U", "A", "L"),
    MIDDLE: ("A", "U", "B", "C"),
    RIGHT_UPPER: ("UR", "R", "B", "U"),
    LEFT_LOWER: ("DL", "L", "A", "C"),
    RIGHT_LOWER: ("DR", "C", "B", "R"),
    BOTTOM: ("DR", "D", "DL", "C"),
}

# Side specs per subtile: ('new', k) is interior edge k, ('parent', side,
# corner) is the half of the parent's side adjacent to the named parent
# corner or midpoint.
FACE_SIDES = {
    LEFT_UPPER: {
        "left": ("parent", "left", "UL"),
        "top": ("parent", "top", "UL"),
        "right": ("new", 1),
        "bottom": ("new", 3),
    },
    MIDDLE: {
        "left": ("new", 4),
        "top": ("new", 1),
        "right": ("new", 2),
        "bottom": ("new", 5),
    },
    RIGHT_UPPER: {
        "left": ("parent", "top", "UR"),
        "top": ("parent", "right", "UR"),
        "right": ("new", 6),
        "bottom": ("new", 2),
    },
    LEFT_LOWER: {
        "left": ("new", 7),
        "top": ("parent", "left", "DL"),
        "right": ("new", 3),
        "bottom": ("new", 4),
    },
    RIGHT_LOWER: {
        "left": ("parent", "right", "DR"),
        "top": ("new", 8),
        "right": ("new", 5),
        "bottom": ("new", 6),
    },
    BOTTOM: {
        "left": ("new", 8),
        "top": ("parent", "bottom", "DR"),
        "right": ("parent", "bottom", "DL"),
        "bottom": ("new", 7),
    },
}


def edge_tag(index, position):
    """Environment entry for interior edge `index` seen from `position`."""
    if EDGE_A_SIDE[index] == position:
        return "%dA" % index
    if EDGE_B_SIDE[index] == position:
        return "%dB" % index
    raise ValueError("edge %d does not border %s" % (index, position))


def child_env(parent_env, position):
    """Environment 4-tuple (left, top, right, bottom) of a subtile."""
    out = []
    for side in SIDES:
        spec = FACE_SIDES[position][side]
        if spec[0] == "new":
            out.append(edge_tag(spec[1], position))
        else:
            out.append(parent_env[SIDES.index(spec[1])])
    return tuple(out)


ROOT_ENV = ("left", "top", "right", "bottom")


def environment_closure(start=ROOT_ENV):
    """All macrotile environments reachable from `start` under subdivision.

    Returns (sorted list of environments, stabilization level) where the
    stabilization level is the first complex level whose subdivision adds no
    new environment.
    """
    seen = {start}
    frontier = [start]
    level = 1
    while frontier:
        fresh = []
        for env in frontier:
            for position in POSITIONS:
                env2 = child_env(env, position)
                if env2 not in seen:
                    seen.add(env2)
                    fresh.append(env2)
        level += 1
        if not fresh:
            break
        frontier = fresh
    return sorted(seen), level


# Midpoint of interior edge k is the middle of these sides in the A-side and
# B-side subtiles; the ordered pair (A-side role first) is the vertex type.
def edge_midpoint_roles(index):
    a_pos, b_pos = EDGE_A_SIDE[index], EDGE_B_SIDE[index]

    def role(position):
        for side in SIDES:
            spec = FACE_SIDES[position][side]
            if spec == ("new", index):
                return side
        raise AssertionError

    return role(a_pos), role(b_pos)


SIDE_ROLE_LETTER = {"left": "L", "top": "U", "right": "R", "bottom": "D"}

# Allowed side-role combinations for a vertex in the middle of two tile
# sides; anything else indicates a broken template.
ALLOWED_SIDE_PAIRS = {
    frozenset(("R", "D")), frozenset(("U", "R")),
    frozenset(("L", "D")), frozenset(("U", "L")),
}

# Edge indices whose midpoints combine R with D; only these may host RD/DR
# vertices.
RD_EDGE_KINDS = (2, 3, 5, 6)
