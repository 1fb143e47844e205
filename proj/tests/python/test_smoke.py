import drinfeld as dr
import pytest


def test_point_counts():
    for d in (1, 2):
        for p in (2, 3):
            for n in (1, 2):
                pts = dr.enumerate_points(d, p, n)
                assert len(pts) == dr.point_count(d, p, n)
                assert len(pts) == p ** ((n - 1) * d) * (p ** (d + 1) - 1) // (p - 1)


def test_bad_prime():
    with pytest.raises(ValueError):
        dr.ProjPoint(4, 1, [1, 0])


def test_tau_and_lambda():
    L = dr.Field(2, 2, 1, 20)
    rec = dr.tau([L.one(), L.pi()])
    assert rec["weights"] == ["1/2", "1/2"]
    assert rec["certified_level"] == 1
    edge = dr.standard_simplex(2, 1, [1, 1])
    a, b = dr.ProjPoint(2, 1, [1, 0]), dr.ProjPoint(2, 1, [0, 1])
    assert dr.lambda_sigma(edge, a, b) == 1
    assert dr.lambda_oracle(edge, a, b) == 1


def test_alpha():
    L = dr.Field(2, 2, 1, 24)
    a, b = dr.ProjPoint(2, 2, [1, 0]), dr.ProjPoint(2, 2, [0, 1])
    u = dr.alpha_level(dr.dirac_pair(a, b))
    v = dr.evaluate_product(u, [L.one(), L.pi()])
    assert v.valuation()[:2] == (-1, 2)
    edge = dr.standard_simplex(2, 1, [1, 1])
    mu = dr.dirac_pair(dr.ProjPoint(2, 1, [1, 0]), dr.ProjPoint(2, 1, [0, 1]))
    assert dr.dlog_residue(dr.alpha_level(mu), edge) == dr.RESIDUE_SIGN * dr.pair_distribution(mu, edge)


def test_convergence_certificate():
    L = dr.Field(2, 2, 1, 40)
    z1, z2 = [L.one(), L.pi()], [L.one(), L.pi() + L.pi().pow(3)]
    fam = dr.random_family(1, 2, 3, 11, 3)
    for reps in ("standard", "mirrored"):
        c = dr.convergence_certificate(fam, z1, z2, 1, 2, 3, reps)
        assert c["pass"] and c["threshold"] == 1


def test_certify_subset():
    b = dr.certify_all(d=1, p=2, only=[1, 3, 9])
    assert b["all_pass"]
    assert [c["id"] for c in b["criteria"]] == [1, 3, 9]
