"""Smoke test for the ringlab_py extension.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/ringlab_py-*.whl
"""

import ringlab_py as rl


def main():
    m = rl.Ring("M(2,Zn(3))")
    assert m.order == 81
    assert len(m.radical("delta")) == 81
    assert m.radical("jacobson") == [0]

    # A = [[1,2],[0,0]], B = [[2,0],[2,0]] in row-major base-3 digits
    a, b = 1 * 27 + 2 * 9, 2 * 27 + 2 * 3
    assert m.mul(a, b) == 0
    assert m.mul(b, a) == 2 * 27 + 1 * 9 + 2 * 3 + 1

    v = m.check(["delta-reversible", "j-reversible"])
    assert v["delta-reversible"]["verdict"] is True
    assert v["j-reversible"]["verdict"] is False
    x, y = v["j-reversible"]["witness"]
    assert m.mul(x, y) == 0 and m.mul(y, x) != 0

    z4 = rl.Ring("Zn(4)")
    assert z4.radical() == [0, 2]
    chars = z4.characterizations()
    assert all(s == [0, 2] for s in chars.values()), chars

    back = rl.Ring.from_json(z4.to_json())
    assert back.to_json() == z4.to_json()

    assert [len(rl.enumerate(k)) for k in (2, 3, 4)] == [1, 1, 4]
    assert "delta-reversible" in rl.predicates()

    found = rl.hunt("delta-reversible => j-reversible", corpus="Zn(4); M(2,Zn(2))")
    assert found["findings"][0]["ring"] == "M(2,Zn(2))"

    rep = rl.run_suite(corpus="small-v1")
    assert {c["id"] for c in rep["cases"]} >= {"T1", "T23", "T19-converse"}

    try:
        rl.Ring("M(2,")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print("smoke test ok", rl.__version__)


if __name__ == "__main__":
    main()
