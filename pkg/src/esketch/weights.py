"""Slot schemas for the weight catalogue and cleavage-driven tight marking."""
from dataclasses import dataclass

from .errors import InvalidData, KindNotInCatalogue, NoUniqueCleavage
from .fincat import Kind


@dataclass(frozen=True)
class Schema:
    proj_slots: tuple
    over_slots: tuple
    has_cell: bool
    tight_slots: frozenset
    diagram_tight: bool


def schema(kind):
    fam = kind.family
    if fam == "product":
        slots = tuple(f"p{i + 1}" for i in range(kind.arity))
        return Schema(slots, (), False, frozenset(slots), True)
    if fam in ("pullback", "comma"):
        return Schema(("left", "right"), ("left", "right"), fam == "comma",
                      frozenset({"left", "right"}), True)
    if fam == "power2":
        return Schema(("src", "tgt"), (), True, frozenset({"src", "tgt"}), True)
    if fam in ("lax", "colax"):
        # the arrow of a lax or colax limit stays loose: the cloven reading
        return Schema(("dom", "cod"), ("arrow",), True, frozenset({"dom", "cod"}), False)
    raise KindNotInCatalogue(str(kind))


@dataclass(frozen=True)
class WeightData:
    """Object part of a weight: shape graph, element sets and arrow actions.

    ``slots`` labels each element ``(shape object, element)`` with the cone
    projection it induces; labels outside the schema are derived legs.
    """

    shape: tuple
    arrows: tuple
    values: dict
    actions: dict
    conical: bool
    slots: dict


def weight_data(kind):
    fam = kind.family
    if fam == "product":
        shape = tuple(range(kind.arity))
        return WeightData(shape, (), {j: ("*",) for j in shape}, {}, True,
                          {(j, "*"): f"p{j + 1}" for j in shape})
    if fam == "pullback":
        return WeightData(("x", "z", "y"), (("f", "x", "y"), ("g", "z", "y")),
                          {"x": ("*",), "z": ("*",), "y": ("*",)},
                          {"f": {"*": "*"}, "g": {"*": "*"}}, True,
                          {("x", "*"): "left", ("z", "*"): "right", ("y", "*"): "y"})
    if fam == "comma":
        return WeightData(("x", "z", "y"), (("f", "x", "y"), ("g", "z", "y")),
                          {"x": ("*",), "z": ("*",), "y": (0, 1)},
                          {"f": {"*": 0}, "g": {"*": 1}}, False,
                          {("x", "*"): "left", ("z", "*"): "right",
                           ("y", 0): "(y,0)", ("y", 1): "(y,1)"})
    if fam == "power2":
        return WeightData(("*",), (), {"*": (0, 1)}, {}, False,
                          {("*", 0): "src", ("*", 1): "tgt"})
    if fam == "lax":
        return WeightData(("x", "y"), (("f", "x", "y"),), {"x": ("*",), "y": (0, 1)},
                          {"f": {"*": 0}}, False,
                          {("x", "*"): "dom", ("y", 0): "(y,0)", ("y", 1): "cod"})
    if fam == "colax":
        return WeightData((0, 1), (("g", 0, 1),), {0: ("*",), 1: (0, 1)},
                          {"g": {"*": 1}}, False,
                          {(0, "*"): "dom", (1, 0): "cod", (1, 1): "(1,1)"})
    raise KindNotInCatalogue(str(kind))


def elements(data):
    """Category of elements of the weight's object part, as a graph on
    elements (the shapes in the catalogue have no composable arrows)."""
    objs = [(j, e) for j in data.shape for e in data.values[j]]
    edges = []
    for name, s, t in data.arrows:
        for e in data.values[s]:
            edges.append(((s, e), (t, data.actions[name][e])))
    return objs, edges


def _components(objs, edges):
    parent = {o: o for o in objs}

    def find(o):
        while parent[o] != o:
            parent[o] = parent[parent[o]]
            o = parent[o]
        return o

    for a, b in edges:
        parent[find(a)] = find(b)
    comps = {}
    for o in objs:
        comps.setdefault(find(o), []).append(o)
    return list(comps.values())


def _path_counts(start, edges):
    counts = {start: 1}
    frontier = [start]
    while frontier:
        nxt = []
        for a in frontier:
            for s, t in edges:
                if s == a:
                    counts[t] = counts.get(t, 0) + counts[a]
                    nxt.append(t)
        frontier = nxt
    return counts


def cloven_mark(kind, mode="auto"):
    """Tight projection slots derived from the per-component initial
    elements of the weight's category of elements."""
    if mode != "auto":
        raise InvalidData(f"unsupported cleavage mode {mode!r}")
    if not isinstance(kind, Kind):
        raise KindNotInCatalogue(str(kind))
    data = weight_data(kind)
    objs, edges = elements(data)
    marked = set()
    for comp in _components(objs, edges):
        initial = []
        for o in comp:
            counts = _path_counts(o, edges)
            if all(counts.get(x, 0) == 1 for x in comp):
                initial.append(o)
        if len(initial) > 1:
            raise NoUniqueCleavage(f"{kind}: several initial elements in a component")
        if initial:
            marked.add(initial[0])
        elif data.conical:
            # conical weights: every leg is a cone projection, so the
            # minimal elements carry the tight legs
            targets = {t for _, t in edges}
            marked.update(o for o in comp if o not in targets)
        else:
            raise NoUniqueCleavage(f"{kind}: a component has no initial element")
    return frozenset(data.slots[o] for o in marked)
