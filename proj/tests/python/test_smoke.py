# SPDX-License-Identifier: Apache-2.0
from fractions import Fraction

import pytest

import kkit

LN2 = Fraction("0.69314718055994530941723212145817656807550013436025525412068")
LN_LN2 = Fraction("-0.366512920581664327012439158232669469454263447837105263053678")


def dyadic(s):
    m, e = s.split("*2^")
    return Fraction(int(m)) * Fraction(2) ** int(e)


def interval(pair):
    return dyadic(pair[0]), dyadic(pair[1])


def test_parse_and_split():
    assert kkit.parse_formula("x+y>2 & E(x)=z") == "x + y > 2 & E(x) = z"
    assert kkit.disjuncts("x+y>2 & E(x)=z") == [
        "x in (-1,1) & x + y > 2 & E(x) = z",
        "x notin (-1,1) & x + y > 2 & 0 = z",
    ]
    with pytest.raises(kkit.ParseError):
        kkit.parse_formula("x +* 1")


def test_jacobian():
    assert kkit.jacobian("shape: 1 2\nE(x1) - x2\nx1^2 + x2^2 - 2\n") == [
        ["1 * E(x1)", "-1"],
        ["2 * x1", "2 * x2"],
    ]


def test_certify_and_check():
    cert = kkit.certify("shape: 1 1\nE(x1) - 2\n", [["0.6", "0.8"]])
    lo, hi = interval(cert["krawczyk_image"][0])
    assert lo <= LN2 <= hi
    assert hi - lo < Fraction(1, 10**15)
    assert kkit.check(cert)

    cert["jacobian"]["entries"][0][0] = ["-1*2^0", "-1*2^-1"]
    assert not kkit.check(cert)

    with pytest.raises(kkit.CertificationError) as info:
        kkit.certify("shape: 1 1\nE(x1) - 2\n", "[0.8, 0.9]")
    assert info.value.reason == "excluded"


def test_solve():
    sat = kkit.solve("E(E(x)) = 2", workers=2)
    assert sat["status"] == "SAT"
    lo, hi = interval(sat["witness"][0])
    assert abs(lo - LN_LN2) < Fraction(1, 10**12) and abs(hi - LN_LN2) < Fraction(1, 10**12)

    unsat = kkit.solve("E(x) = x", radius=10)
    assert unsat["status"] == "REGION-UNSAT"
    assert unsat["config"]["radius"] == "5*2^1"


def test_solve_system_is_deterministic():
    system = "shape: 1 2\nE(x1) - x2\nx1^2 + x2^2 - 2\n"
    one = kkit.solve_system(system, workers=1)
    four = kkit.solve_system(system, workers=4)
    assert one == four
    assert one["status"] == "SAT"
    assert all(kkit.check(c) for c in one["certificates"])


def test_reduce():
    system = "shape: 2 2\n2*x2 - x1\nE(x1) - 2\n"
    cert = kkit.certify(system, [[0.6, 0.8], [0.3, 0.4]])
    red = kkit.reduce(system, cert, "2;1;0")
    assert red["plain"] == "shape: 1 1\n1 * E(x1)^2 - 2\n"
    lo, hi = interval(red["certificate"]["krawczyk_image"][0])
    assert lo <= LN2 / 2 <= hi
    with pytest.raises(kkit.ReductionError):
        kkit.reduce(system, cert, "2;1;1/3")


def test_run():
    code, out, err = kkit.run(["parse", "-e", "E(x) = 1"])
    assert code == 0 and out == "E(x) = 1\n"
    code, out, err = kkit.run(["frobnicate"])
    assert code == 2
