#!/usr/bin/env python3
"""Smoke test for the restind_py extension module.

Builds the cdylib with cargo, loads it, and exercises the main entry
points with known-answer checks. Run from anywhere:

    python3 python/smoke_test.py
"""
import ctypes.util
import pathlib
import shutil
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "restind-py"],
        cwd=ROOT,
        check=True,
    )
    src = ROOT / "target" / "release" / "librestind_py.so"
    dst = ROOT / "target" / "release" / "restind_py.so"
    shutil.copyfile(src, dst)
    sys.path.insert(0, str(dst.parent))
    import restind_py

    return restind_py


def main():
    m = build_and_import()

    # groups and character tables
    s5 = m.Group("S5")
    assert s5.order == 120 and s5.num_classes == 7
    assert sorted(s5.irreducible_degrees) == [1, 1, 4, 4, 5, 5, 6]
    assert s5.is_transitive()
    assert s5.minimal_normal_orders() == [60]

    raw = m.Group("(1,2),(1,2,3,4,5)", degree=5)
    assert raw.order == 120

    q8 = m.Group("Q8")
    assert q8.irreducible_degrees.count(2) == 1

    # spanning hypothesis
    assert s5.check_t("A") == "HOLDS_BY_THEOREM"
    assert s5.check_t("A", shortcuts=False) == "HOLDS"
    a5 = m.Group("A5")
    assert a5.check_t("G", shortcuts=False) == "HOLDS"

    # induction identities
    rank, target = s5.artin_span()
    assert rank == target == 6
    c6 = m.Group("C6")
    terms = c6.brauer()
    assert len(terms) > 0
    assert all(not c.startswith("-") for (_, _, c) in terms)

    # field-counting invariants
    assert m.Group("S3").m() == "1/4"
    assert m.Group("A4").m() == "1/6"
    assert m.Group("S4").m() == "1/12"
    assert s5.m_regular("A") == "0"
    assert s5.a_natural() == 1

    # Frobenius statistics
    r = m.chebotarev("x^5-x-1", 10_000)
    assert r["discriminant"] == "2869"
    assert r["parity_identity_holds"]
    assert sum(obs for (_, obs, _) in r["rows"]) + len(r["ramified"]) == r["pi_x"]

    # zero-free-region calculator
    grid, closed = m.eta(10.0, 0.5, 120, 5, 1e12)
    assert abs(grid - closed) <= 1e-6 * abs(closed)
    assert m.omega(10.0, 0.5, 120, 5, 3.0) > 0

    print("smoke test passed")


if __name__ == "__main__":
    main()
