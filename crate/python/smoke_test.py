"""Smoke test for the carter_py extension.

Build and install first:
    pip install --no-build-isolation ./crates/carter-py
"""

import json

import carter_py


def main():
    assert carter_py.root_count("E8") == 240
    assert carter_py.root_count("D4") == 24

    names = carter_py.names()
    assert "E6(a1)" in names and "E8(a8)" in names

    d = carter_py.diagram("E6(a1)")
    assert len(d) == 6
    assert d.is_valid()
    assert sum(1 for e in d.edges if e[2] == "dotted") == 1
    assert max(d.eigenvalues()) < 4.0

    back = carter_py.Diagram.from_json(d.to_json())
    assert back.gram() == d.gram()
    assert json.loads(d.to_json())["name"] == "E6(a1)"
    assert d.flip(0).is_valid()

    src, tgt, m = carter_py.transition_matrix(3)
    assert len(m) == 6 and src[-1] == "b3~" and tgt[-1] == "b3"
    assert carter_py.verify_case(3)
    assert carter_py.verify_case(2, l=6, k=2)

    congruent, flips = carter_py.verify_chain()
    print(f"chain exact: {congruent}, residual flips: {flips}")

    conj, pairs = carter_py.conjugacy("D4", "D4")
    assert conj == pairs == 190
    conj, pairs = carter_py.conjugacy("D4(a1)", "D4")
    print(f"D4(a1) in D4: {conj}/{pairs} realization pairs W-conjugate")

    assert carter_py.extra_node_count("E7") == 4
    assert carter_py.cli(["verify", "case", "5"]) == 0

    try:
        carter_py.diagram("nope")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown diagram accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
