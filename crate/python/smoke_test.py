"""Smoke test for the pybohr extension module.

Build and install first, e.g.

    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/pybohr-*.whl

then run `python python/smoke_test.py`.
"""

import json
import math

import pybohr


def main():
    g2 = pybohr.general_lower(2)
    assert g2.direction == "lower"
    assert abs(g2.value - (1 - math.sqrt(2 / 3))) < 1e-15
    assert pybohr.general_lower(1).value == 1 / 3

    root = pybohr.hypercone_root()
    assert root.lo <= 0.4466615745101681 <= root.hi
    assert root.width() <= 1e-6

    h2 = pybohr.hypercone_upper(2)
    assert h2.value <= 0.223332 and h2.certificate is not None
    assert pybohr.refined_cone_upper(2).value < 0.191373

    lower, upper = pybohr.l1_bounds()
    assert lower.value >= 0.238843 and upper.value == 1 / 3

    assert pybohr.multinomial([2, 1, 1]) == 12
    assert pybohr.simplex_count(3, 12) == 91
    assert len(pybohr.enumerate_weight(3, 4)) == 15
    assert pybohr.cone_layer_sum(2, 2) == (5, 2)

    cone = pybohr.Domain.hypercone(2)
    assert abs(cone.monomial_sup([1, 1]) - 0.25) < 1e-15
    f = pybohr.Series.extremal_cone_family(0.6, 2, 30)
    assert f.bohr_majorant_sum(cone, pybohr.general_lower(2).value) < 1
    assert pybohr.Series.from_text(f.to_text()) == f

    w = pybohr.Series.mobius_witness(0.5, 40)
    assert abs(w.evaluate([0.5])) < 1e-10
    assert w.coefficient([1]) == complex(-0.75, 0)

    reports = json.loads(pybohr.verify(seed=7))
    assert reports and all(r["verdict"] == r["expected"] for r in reports)
    rows = json.loads(pybohr.table("json", 3))["rows"]
    assert any(r["id"] == "l1_lower" for r in rows)

    print(f"pybohr smoke test passed ({len(reports)} verification reports)")


if __name__ == "__main__":
    main()
