"""Smoke test for the idealtetra_py extension module."""

import math

import idealtetra_py as it

REGULAR_VOLUME = 1.0149416064096536


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    assert close(it.lobachevsky(math.pi / 3), 0.3383138688032179)
    assert close(it.lobachevsky_quadrature(math.pi / 6), it.lobachevsky(math.pi / 6))

    reg = it.TriangleCoords.regular()
    assert close(reg.volume(), REGULAR_VOLUME)
    sc = it.forward(reg)
    assert close(sc.alpha, -1 / 27) and close(sc.omega, 1 / 3)

    tc = it.TriangleCoords(0.2, 0.35, 0.45)
    sc = it.forward(tc)
    back = it.invert(sc).to_triangle()
    assert all(close(a, b, 1e-8) for a, b in zip(back.as_tuple(), tc.as_tuple()))
    cubic = it.invert_via_cubic(sc)
    assert all(close(a, b, 1e-8) for a, b in zip(cubic.as_tuple(), tc.as_tuple()))
    assert close(it.volume(sc), tc.volume())
    d_alpha, d_omega = it.volume_derivatives(sc)
    assert d_alpha < 0 < d_omega

    verts = tc.synthesize()
    assert all(v.classify() == "null" for v in verts)
    again = it.doubly_stochastic_coords(verts)
    assert all(close(a, b) for a, b in zip(again.as_tuple(), tc.as_tuple()))

    assert it.kprime(2.0, 0.5) > 0
    rec = it.extremal_scan(40)
    assert close(rec["min_det"], -1 / 27)

    for bad in (lambda: it.TriangleCoords(0.1, 0.2, 0.7),
                lambda: it.volume(it.SeidelCoords(-0.001, 0.34)),
                lambda: it.run_suite("nonsense")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    reports = it.run_suite("hodge", seed=7)
    assert reports and all(r["passed"] for r in reports)
    print("smoke test passed")


if __name__ == "__main__":
    main()
