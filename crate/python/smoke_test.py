"""Smoke test for the dmodpoly extension module.

Build it first, e.g. with `maturin develop -m crates/python/Cargo.toml`.
"""

import json

import dmodpoly

TWO_BLOCK = {
    "n": 2,
    "partition": [1, 1],
    "m": 1,
    "relations": [
        [
            {"coeff": "1", "alpha": [1, 0], "beta": [0, 1], "gen": 1},
            {"coeff": "1", "alpha": [0, 2], "beta": [1, 0], "gen": 1},
        ]
    ],
}


def main():
    pres = dmodpoly.Presentation.from_json(json.dumps(TWO_BLOCK))
    assert pres.n == 2 and pres.m == 1 and pres.partition == [1, 1]

    report = pres.dimension_polynomial()
    assert report.eval([3, 3]) == 82
    assert pres.count([3, 3]) == 82
    assert pres.rank_dimension([3, 3]) == 82
    assert report.total_degree == 3
    assert not report.holonomic
    top = {tuple(k): v for k, v in report.monomial_coefficients if sum(k) == 3}
    assert top == {(2, 1): "1", (1, 2): "1/2"}, top

    psi, d, e = pres.bernstein()
    assert (d, e) == (3, 3), (psi, d, e)

    basis = json.loads(pres.groebner_basis())
    assert basis["certified_stages"] == [1, 2]
    rendered = pres.to_json()
    assert dmodpoly.Presentation.from_json(rendered).to_json() == rendered
    back = json.loads(rendered)
    key = lambda t: (t["gen"], t["alpha"], t["beta"])
    assert sorted(back["relations"][0], key=key) == sorted(TWO_BLOCK["relations"][0], key=key)

    # d1 * x1 = x1 d1 + 1
    prod = dmodpoly.weyl_mul(1, [("1", [0], [1])], [("1", [1], [0])])
    assert sorted(prod) == sorted([("1", [1], [1]), ("1", [0], [0])]), prod

    # A = {(1,1)} in N^2 with one block: C(t+2,2) - C(t,2) = 2t+1
    assert dmodpoly.omega([[1, 1]], [2]) == [([0], -1), ([1], 2)]

    try:
        dmodpoly.Presentation.from_json('{"n": 1}')
    except ValueError as err:
        assert "partition" in str(err) or "missing" in str(err), err
    else:
        raise AssertionError("malformed document accepted")

    print("dmodpoly smoke test passed:", report.phi)


if __name__ == "__main__":
    main()
