"""Smoke test for the finhtop extension module."""

import json

import finhtop


def main():
    chain = finhtop.Poset(["0", "1", "2"], [("0", "1"), ("1", "2")])
    assert chain.is_contractible()
    assert chain.leq("0", "2")

    w = finhtop.w_poset()
    core, removed = w.core()
    assert len(core) == 11 and removed == []
    assert w.homology() == ([1], [[]])
    verdict = json.loads(w.triviality())
    assert verdict["verdict"] == "trivial", verdict

    sphere = finhtop.sphere_pushout().hocolim()
    assert len(sphere) == 6
    assert sphere.homology()[0] == [1, 0, 1]

    circle = finhtop.Poset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    point = finhtop.Poset(["*"])
    cylinder = finhtop.mapping_cylinder(circle, point, [(x, "*") for x in "abcd"])
    assert cylinder.is_contractible()

    triangle = finhtop.Complex(["0", "1", "2"], [["0", "1"], ["1", "2"], ["0", "2"]])
    assert triangle.homology()[0] == [1, 1]
    assert triangle.barycentric().euler_characteristic() == 0
    assert len(triangle.face_poset(op=True)) == 6

    again = finhtop.Poset.from_json(w.to_json())
    assert again.covers == w.covers

    for theorem in finhtop.theorem_ids():
        reports = json.loads(finhtop.run_suite(theorem, 5, seed=1))
        assert all(r["conclusion"] == "verified" for r in reports), theorem

    diagram = finhtop.random_diagram(3, 3, 4)
    report = json.loads(finhtop.check("thomason", json.dumps({"kind": "diagram", "diagram": json.loads(diagram.to_json())})))
    assert report["conclusion"] == "verified"
    print("finhtop smoke test passed")


if __name__ == "__main__":
    main()
