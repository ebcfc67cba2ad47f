"""Volume of the regular ideal hyperbolic 4-simplex by direct quadrature.

The simplex is placed in the Klein model with its five ideal vertices on the
unit sphere.  By symmetry it is the union of five cones from the centre over
the facets; each cone is integrated radially in closed form (the radial
antiderivative is g below) and the remaining 3-dimensional integral over the
facet is done numerically.  Further symmetry cuts the facet into four pieces.

Needs scipy (pip install .[scripts]).  Prints the value used as V4_DEFAULT.
"""
import argparse

import numpy as np
from scipy import integrate


def simplex_vertices():
    e = np.eye(5) - 1 / 5
    _, _, vt = np.linalg.svd(e)
    v = e @ vt[:4].T
    return v / np.linalg.norm(v, axis=1)[:, None]


def g(r2):
    # int_0^1 s^3 / (1 - r2 s^2)^(5/2) ds, times r2^2, in closed form
    s = 1 - r2
    return 2 / 3 + s ** -1.5 / 3 - s ** -0.5


def volume(tol=1e-10):
    v = simplex_vertices()
    v1, v2, v3, v4 = v[1], v[2], v[3], v[4]
    m = np.stack([v2 - v1, v3 - v1, v4 - v1])
    jac = np.sqrt(np.linalg.det(m @ m.T))
    d = abs(v[0] @ (v1 + v2 + v3 + v4) / 4)

    def f(t, m3, m2):
        w = m2 * v2 + m3 * v3 + (1 - m2 - m3) * v4
        y = (1 - t) * v1 + t * w
        r2 = y @ y
        return g(r2) * d / r2 ** 2 * jac * t * t

    def tmax(m3, m2):
        # stay in the quarter of the facet nearest v1
        return 1 / (1 + max(m2, m3, 1 - m2 - m3))

    val, err = integrate.tplquad(f, 0, 1, 0, lambda m2: 1 - m2, 0, tmax, epsabs=tol, epsrel=tol)
    return 20 * val, 20 * err


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()
    val, err = volume(args.tol)
    print(f"v4 = {val:.16f}  (quadrature error estimate {err:.1e})")


if __name__ == "__main__":
    main()
