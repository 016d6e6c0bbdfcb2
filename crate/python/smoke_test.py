"""Smoke test for the pytdpair extension module.

Build and install first, e.g.
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/pytdpair-*.whl
then run `python python/smoke_test.py`.
"""

from math import comb

import pytdpair as tp


def main():
    geo = tp.Sequence.geometric(2, 2)
    assert geo.theta == ["1", "2", "4"]
    assert geo.is_feasible()

    cert = tp.directness(geo, n=2)
    assert (cert["dim"], cert["zigzag"], cert["rank"]) == (27, 6, 21)
    assert cert["direct"] and cert["lambda"] == {"n": 2}

    for d in range(1, 4):
        for n in range(4):
            zig = tp.zigzag_words(d, n=n)
            assert len(zig) == len(tp.monomials(n, d)) == comb(n + d, d)
            assert [str(tp.monomial_to_word(m)) for m in tp.monomials(n, d)] == zig

    w = tp.Word("E0 e2 E0 e1 E0")
    assert w.is_zigzag() and w.kappa() == 2 and w.monomial() == [2, 1]
    assert not tp.Word("E0 e1 E0 e2 E0").is_zigzag()
    assert tp.Word("e0") * tp.Word("e1") is None

    qr = tp.Sequence.qracah(2, 0, 1, 2, 0, 1, 3, 3)
    wit = qr.qracah_witness()
    assert wit["is_qracah"] and wit["bc"] == "2" and wit["bstar_cstar"] == "3"

    gf = tp.Sequence.recurrence(5, [0, 1, 7], [2, -1, 4], 2, field="prime:1000003")
    assert all(c["in_r"] for c in tp.psi_check(gf)["checks"])
    assert tp.mu_verify(geo, 3)["evidence_up_to_n_max"]
    assert tp.phi(geo)["check"]["invertible"]

    assert tp.validate_array(tp.Sequence([0, 1], [0, 1]), [1, 3])["valid"]
    assert not tp.validate_array(tp.Sequence([0, 1], [0, 1]), [1, -1])["valid"]

    assert tp.in_relator_ideal(tp.Sequence([1, 2], [3, 4]), [("E0 e1 E0 e0 E0", 1), ("E0 e1 E1 e0 E0", 1)])
    assert tp.rank([[1, 2], [2, 4]]) == 1
    assert tp.rank([["1/2", 1], [1, 3]]) == 2

    scan = tp.scan(2, max_length=4, samples=2, seed=1, field="prime:1000003")
    assert scan["failures"] == [] and scan["direct"] == scan["cases"]

    try:
        tp.directness(tp.Sequence([1, 1], [2, 3]), n=2)
    except ValueError as e:
        assert "not feasible" in str(e)
    else:
        raise AssertionError("infeasible input accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
