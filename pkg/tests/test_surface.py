import json

import pytest

from mdpfaffian.generators import cycle_disk, example_annulus, random_instance, torus_grid
from mdpfaffian.rings import POLYNOMIAL
from mdpfaffian.surface import InvalidGraphError, add_chord, add_vertex_in_face, from_edges, load, save


def test_annulus_faces(annulus):
    assert annulus.genus == 0
    assert annulus.b == 2
    assert len(annulus.faces) == 4
    names = annulus.vertex_names
    assert [[names[v] for v in annulus.boundary_vertices(k)] for k in range(2)] == [["b", "c"], ["a", "d"]]
    assert sorted(len(w) for w in annulus.face_walks) == [2, 2, 4, 4]


def test_interior_faces_run_counterclockwise():
    g = cycle_disk(5)
    inner = [f for f in range(len(g.faces)) if f not in g.hole_faces]
    walk = [int(g.tail[d]) for d in g.face_walks[inner[0]]]
    i = walk.index(0)
    assert walk[i:] + walk[:i] == [0, 1, 2, 3, 4]


def test_boundary_walk_starts_at_lowest_vertex():
    g = random_instance("annulus", 3)
    for k in range(g.b):
        vs = [int(g.tail[d]) for d in g.boundary_walk(k)]
        assert vs[0] == min(vs)


def test_torus_genus():
    assert torus_grid(3, 3).genus == 1
    assert torus_grid(2, 2).n_edges == 8


def test_save_load_roundtrip(annulus):
    text = save(annulus)
    g = load(text, ring=POLYNOMIAL)
    assert g.rotations == annulus.rotations
    assert [g.boundary_walk(k) for k in range(2)] == [annulus.boundary_walk(k) for k in range(2)]
    assert g.vertex_weights == annulus.vertex_weights


def test_boundary_accepted_in_either_direction(annulus):
    doc = json.loads(save(annulus))
    darts = {d["id"]: d["darts"] for d in doc["edges"]}
    twin = {}
    for a, b in darts.values():
        twin[a], twin[b] = b, a
    doc["boundary"] = [[twin[d] for d in reversed(walk)] for walk in doc["boundary"]]
    g = load(doc, ring=POLYNOMIAL)
    assert g.hole_faces == annulus.hole_faces


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d["edges"].append({"id": "x", "darts": ["z1", "z1"]}),
        lambda d: d["darts"].pop("a"),
        lambda d: d.__setitem__("boundary", [["bc1_b", "cd_c"]]),
        lambda d: d.pop("vertices"),
    ],
)
def test_invalid_documents(mutate):
    from importlib import resources

    doc = json.loads((resources.files("mdpfaffian") / "data" / "annulus.json").read_text())
    mutate(doc)
    with pytest.raises(InvalidGraphError):
        load(doc, ring=POLYNOMIAL)


def test_loops_and_disconnected_rejected():
    with pytest.raises(InvalidGraphError):
        from_edges(1, [(0, 0)], [[0, 1]])
    with pytest.raises(InvalidGraphError):
        from_edges(4, [(0, 1), (2, 3)], [[0], [1], [2], [3]])


def test_surgery_keeps_euler_characteristic():
    g = cycle_disk(6)
    hole = g.hole_faces[0]
    g2, e = add_chord(g, hole, 0, 3, 0, {0: g.face_walks[hole][3]})
    assert g2.genus == 0 and len(g2.faces) == len(g.faces) + 1
    assert len(g2.boundary_walk(0)) == 4
    g3, v, darts = add_vertex_in_face(g, hole, [0, 2, 4], [1, 1, 1], 1)
    assert g3.n_vertices == 7 and g3.genus == 0 and len(darts) == 3
