"""Quick end-to-end check of the Python bindings.

    pip install --no-build-isolation ./crates/python
    python python/smoke_test.py
"""

import json
import math
from fractions import Fraction
from pathlib import Path

import gradlab

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    assert gradlab.smith_normal_form_factors([[2, 4], [6, 8]]) == ["2", "4"]
    assert math.isclose(gradlab.operator_norm([[3, 0], [0, 4]]), 4.0)

    z = {"free_abelian": {"generators": 1}}
    r = gradlab.homology_gradient(z, "abelian:n=1..6")
    ratios = [Fraction(p["exact_ratio"]) for p in r["series"]["points"]]
    assert ratios == [Fraction(1, n) for n in range(1, 7)], ratios

    zxf2 = json.loads((FIXTURES / "ZxF2.json").read_text())
    r = gradlab.homology_gradient(zxf2, "abelian:n=2,3,4")
    ratios = [Fraction(p["exact_ratio"]) for p in r["series"]["points"]]
    assert ratios == [Fraction(6, 8), Fraction(11, 27), Fraction(18, 64)], ratios

    f = gradlab.farber_check(z, "abelian:n=1..10", [[1]])
    assert f["passes"]

    c4 = gradlab.RaagGraph(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
    assert not c4.is_inner_amenable()
    assert c4.dfs_walk() == [1, 3, 2, 4]
    assert c4.analyze()["chain_status"] == "PROVEN"
    assert gradlab.verify_certificate(c4.chain_certificate())["status"] == "PROVEN"
    assert gradlab.RaagGraph(3, [(1, 2), (2, 3)]).is_inner_amenable()

    cone = (FIXTURES / "cone_over_square.json").read_text()
    assert gradlab.verify_certificate(cone)["status"] == "PROVEN"

    g = gradlab.coset_graph({"free_abelian": {"generators": 2}}, [[1]], [[1], [2]], radius=3)
    assert len(g["graph"]["vertices"]) == 7 and g["orbit_count"] == 2

    circle = gradlab.RebuildingData.subdivided_circle(8)
    assert circle.validate()["passes"]
    kappa = circle.minimal_kappa(8.0)
    assert math.isfinite(kappa) and circle.quality(8.0, kappa)["overall"]
    identity = gradlab.RebuildingData((FIXTURES / "identity.json").read_text())
    assert identity.minimal_kappa(1.0) == 1.0

    try:
        gradlab.RaagGraph(2, [(1, 1)])
    except ValueError:
        pass
    else:
        raise AssertionError("loop edge accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
