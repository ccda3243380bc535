"""Smoke test for the ccc_zagreb extension module.

Build and run:

    cargo build -p ccc-zagreb-py --features extension-module --release
    cp target/release/libccc_zagreb.so python/ccc_zagreb.so
    python3 python/smoke_test.py
"""

import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import ccc_zagreb as cz  # noqa: E402


def main():
    d8 = cz.Group("dihedral:4")
    assert d8.order == 8 and len(d8) == 8
    assert d8.center_size() == 2
    assert d8.commuting_probability() == Fraction(5, 8)
    assert d8.distinct_centralizer_count() == 4
    assert d8.center_quotient_structure() == "Z2^2"
    assert d8.ccc_graph().decomposition() == "3K1"

    f21 = cz.Group("frobenius:7,3")
    assert f21.frobenius() == (7, 3)
    assert f21.commuting_probability() == Fraction(5, 21)
    rep = f21.ccc_graph().zagreb()
    assert (rep.m1, rep.m2, rep.lhs, rep.rhs) == (4, 2, 8, 8)
    assert rep.verdict == "equality"

    star = cz.Graph("star:5+K:3").zagreb()
    assert (star.m1, star.m2, star.lhs, star.rhs) == (42, 37, 333, 336)
    assert star.verdict == "violated"

    big = cz.report_from_decomposition("3K1000000")
    assert big.m1 == 3 * 10**6 * (10**6 - 1) ** 2
    assert big.verdict == "equality"

    rec = cz.verify_family("semidihedral:3")
    assert rec["structure_match"] and rec["equality_as_predicted"]
    assert rec["predicted"]["decomposition"] == "2K4"

    heis = cz.Group("heisenberg:3").verify_quotients()
    assert any(r["case"] == "elem-abelian:3 x=3" and r["structure_match"] for r in heis)

    q8 = cz.Group.from_presentation("a, b | a^4, b^2 = a^2, b^-1 a b = a^-1")
    assert q8.order == 8 and q8.class_sizes() == [1, 1, 2, 2, 2]
    again = cz.Group.from_json(q8.to_json())
    assert again.class_sizes() == q8.class_sizes()

    pred = cz.predicted_structure("dihedral:6")
    assert pred["expected_equality"] is True

    try:
        cz.Group("dihedral:2")
    except ValueError as e:
        assert "m" in str(e)
    else:
        raise AssertionError("dihedral:2 should be rejected")

    assert json.loads(json.dumps(star.to_dict()))["verdict"] == "violated"
    print("ccc_zagreb smoke test: ok")


if __name__ == "__main__":
    main()
