from geomconn.field import GF
from geomconn.groebner import Ideal
from geomconn.poly import PolynomialRing


def ring(p, names, e=1, weights=None):
    return PolynomialRing(GF(p, e), names.split(), weights)


def ideal(p, names, gens, e=1, weights=None):
    R = ring(p, names, e, weights)
    return Ideal(R, gens)


def conjugate_lines(p, a=2, e=1):
    """(u^2 - a x^2, v^2 - a y^2, uv - a xy, vx - uy) in F_q[x, y, u, v].

    For a non-square a this is a domain over F_q whose Proj splits over
    F_q(sqrt a) into the two disjoint lines u = +-sqrt(a) x, v = +-sqrt(a) y.
    """
    return ideal(p, "x y u v", [f"u^2 - {a}*x^2", f"v^2 - {a}*y^2", f"u*v - {a}*x*y", "v*x - u*y"], e)


def disjoint_lines(p, e=1):
    return ideal(p, "x y u v", ["x*u", "x*v", "y*u", "y*v"], e)
