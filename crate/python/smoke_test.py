"""Smoke test for the bisetkit Python bindings."""

import bisetkit_py as bk


def main():
    a5 = bk.Group("A5")
    assert a5.order() == 60
    assert len(a5.subgroup_classes()) == 9

    assert len(bk.basis("C2", "C2")) == 5
    product = bk.compose("C2", "C2", "C2", 0, 0)
    assert product, "composition of basis elements is nonzero"

    c2 = bk.Burnside("C2xC2")
    ok, offenders = c2.nv()
    assert ok and not offenders
    cert = c2.qh()
    assert cert["verdict"] is True
    cartan = c2.cartan_matrix()
    assert all(cartan[i][j] == cartan[j][i] for i in range(len(cartan)) for j in range(len(cartan)))

    s3 = bk.Burnside("S3")
    ok, offenders = s3.nv()
    assert not ok and ("C3", "sgn") in offenders
    assert s3.evaluation_dims("C3", "sgn")[0] == 0

    a4 = bk.Burnside("A4")
    table = a4.vanishing_table()
    assert table, "vanishing table is nonempty"
    dim, loewy = a4.pim("A4", "sgn")
    assert dim == sum(loewy)

    print("smoke test passed:", a5, c2, s3, a4)


if __name__ == "__main__":
    main()
