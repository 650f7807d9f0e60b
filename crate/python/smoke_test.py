"""Smoke test for the nzflow extension module.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/nzflow-*.whl
"""

import nzflow


def main():
    p = nzflow.Graph.petersen()
    assert (p.n, p.m) == (10, 15)
    assert p.is_cubic() and p.bridges() == []
    same = nzflow.Graph.from_graph6(p.to_graph6())
    assert sorted(map(sorted, same.edges())) == sorted(map(sorted, p.edges()))

    odd, matching = nzflow.oddness(p)
    assert odd == 2 and len(matching) == 5
    assert nzflow.cyclic_connectivity_below(p, 6) == 5

    assert nzflow.find_flow(p, 4) is None
    cert = nzflow.find_flow(p, 5)
    assert nzflow.verify_certificate(p, cert)

    val = nzflow.valuation_of(p, cert)
    assert nzflow.check_balanced(p, val)["balanced"]
    back = nzflow.flow_from_valuation(p, val, 5)
    assert nzflow.valuation_of(p, back) == val

    result = nzflow.five_flow(p)
    assert result["outcome"]["kind"] == "flow_found"
    assert nzflow.verify_certificate(p, result["outcome"]["flow"])

    try:
        nzflow.Graph(3, [(0, 3)])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range vertex accepted")

    print("nzflow smoke test: ok")


if __name__ == "__main__":
    main()
