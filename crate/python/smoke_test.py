"""Smoke test for the pyckqw extension.

Build and install it first:

    pip install --no-build-isolation -e crates/python
    python3 python/smoke_test.py
"""

import cmath
import math

import pyckqw


def check_elements():
    a = pyckqw.Element("0.3 + i1 - 2*i1*i2", tags=2)
    e = a.apply("exp")
    # exp(a0 + n) = e^a0 (1 + n + n^2/2), with n^2 = -4 i1*i1*i2 = 0 here
    assert cmath.isclose(e.coeff(0), math.exp(0.3))
    assert cmath.isclose(e.coeff(1), math.exp(0.3))
    assert cmath.isclose(e.coeff(3), -2 * math.exp(0.3))
    one = pyckqw.Element("1", tags=2)
    assert a * a.inv() == one
    i1 = pyckqw.Element.tag(2, 1)
    assert str(i1 * i1) == "0"
    try:
        pyckqw.Element("1 + i3", tags=2)
    except ValueError:
        pass
    else:
        raise AssertionError("tag beyond the algebra accepted")


def check_rmatrix():
    v = 0.37
    r = pyckqw.rmatrix("1,1", v)
    assert len(r) == 9 and all(len(row) == 9 for row in r)
    assert cmath.isclose(r[0][0].coeff(0), math.exp(v))
    assert cmath.isclose(r[3][1].coeff(0), 2 * math.sinh(v))
    rc = pyckqw.rmatrix("n,1", 1.0)
    assert str(rc[0][0]) == "1 + i1"
    try:
        pyckqw.rmatrix("i,1", v)
    except ValueError as e:
        assert "imaginary" in str(e)
    else:
        raise AssertionError("imaginary slot accepted")


def check_relations_and_orbit():
    rel = pyckqw.relations("1,n", 0.4)
    assert rel["relations"], "no relations"
    term = rel["relations"][0]["terms"][0]
    assert set(term) == {"iota", "word", "re", "im"}
    pts = pyckqw.orbit("minkowski", 2.0, 1.0, 32)
    assert len(pts) == 33
    for _, x0, x1 in pts:
        assert math.isclose(x0 * x0 - x1 * x1, 3.0, rel_tol=1e-9)


def check_suites():
    reports = pyckqw.verify("frt", "n,1", v=[0.37], seed=3)
    assert reports and all(r["pass"] for r in reports), [r for r in reports if not r["pass"]]
    table = pyckqw.pairing_table("1,1", 0.37)
    flagged = [e for e in table["entries"] if e["flagged"]]
    assert len(flagged) == 2
    print(f"pairing table: {table['matched']}/{table['listed']} listed entries reproduced")


if __name__ == "__main__":
    check_elements()
    check_rmatrix()
    check_relations_and_orbit()
    check_suites()
    print("smoke test passed")
