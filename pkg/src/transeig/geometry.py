"""Boundary curves of the test domains and the quadrature meshes on them.

Curves are 2*pi-periodic and counterclockwise, so the outward normal is
``(z2', -z1') / |z'|``.  Polygons are parametrised edge by edge with their
vertices at equally spaced corner parameters; the sigmoid change of
variables is composed in so that the speed vanishes at every corner and
the equidistant trapezoid nodes cluster there.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi

SHAPES = ("disk", "peanut", "square", "triangle", "lshape", "pentagon")


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class BoundaryCurve:
    """A closed parametric curve.

    ``kind`` is ``"disk"``, ``"peanut"`` or ``"polygon"``; ``radius`` is
    used by the disk and ``vertices`` (counterclockwise, shape ``(m, 2)``)
    by polygons.
    """

    kind: str
    radius: float = 1.0
    vertices: np.ndarray | None = None
    grading_p: float = 3.0

    def __post_init__(self):
        if self.kind not in ("disk", "peanut", "polygon"):
            raise GeometryError(f"unknown curve kind {self.kind!r}")
        if self.kind == "polygon":
            v = np.asarray(self.vertices, float)
            if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
                raise GeometryError("polygon needs an (m, 2) vertex array, m >= 3")
            object.__setattr__(self, "vertices", v)
            if self.grading_p < 2:
                raise GeometryError("grading exponent must be >= 2")

    @property
    def corner_params(self):
        if self.kind != "polygon":
            return np.empty(0)
        m = len(self.vertices)
        return TWO_PI * np.arange(m) / m

    @property
    def has_corners(self):
        return self.kind == "polygon"


def disk(radius=0.5):
    return BoundaryCurve("disk", radius=radius)


def peanut():
    return BoundaryCurve("peanut")


def polygon(vertices, grading_p=3.0):
    v = np.asarray(vertices, float)
    # shoelace; clockwise input is reversed to keep the normal outward
    x, y = v[:, 0], v[:, 1]
    if np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y) < 0:
        v = v[::-1].copy()
    return BoundaryCurve("polygon", vertices=v, grading_p=grading_p)


def make_shape(name, grading_p=3.0):
    """One of the named test domains."""
    s2 = np.sqrt(2.0)
    if name == "disk":
        return disk(0.5)
    if name == "peanut":
        return peanut()
    if name == "square":
        verts = [(0.5, -0.5), (0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5)]
    elif name == "triangle":
        verts = [(-np.sqrt(3) / 2, -0.5), (np.sqrt(3) / 2, -0.5), (0.0, 1.0)]
    elif name == "lshape":
        verts = [(s2, s2 / 2), (s2 / 2, s2), (0.0, s2 / 2),
                 (-s2 / 2, s2), (-s2, s2 / 2), (0.0, -s2 / 2)]
    elif name == "pentagon":
        j = np.arange(5)
        verts = np.c_[np.cos(TWO_PI * j / 5), np.sin(TWO_PI * j / 5)]
    else:
        raise GeometryError(f"unknown shape {name!r}; choose from {', '.join(SHAPES)}")
    return polygon(verts, grading_p)


def sigmoid_transform(s, tj, tj1, p, second=False):
    """Graded change of variables on the panel ``[tj, tj1]``.

    Returns ``(w, dw)`` (and ``ddw`` when ``second`` is set).  The map fixes
    both endpoints, is symmetric about the panel midpoint and has ``p - 1``
    vanishing derivatives at the ends.
    """
    if not tj < tj1:
        raise GeometryError("panel endpoints must satisfy tj < tj1")
    s = np.asarray(s, float)
    h = tj1 - tj
    xi = (2.0 * s - tj - tj1) / h
    c = 1.0 / p - 0.5
    v = -c * xi**3 + xi / p + 0.5
    dv = (-3.0 * c * xi**2 + 1.0 / p) * (2.0 / h)
    ddv = -6.0 * c * xi * (2.0 / h) ** 2
    # pin the endpoints so corner nodes get exactly zero speed
    v = np.where(xi <= -1.0, 0.0, np.where(xi >= 1.0, 1.0, v))
    a = v**p
    b = (1.0 - v) ** p
    den = a + b
    f = a / den
    num = p * (v * (1.0 - v)) ** (p - 1.0)
    df = num / den**2
    w = tj + h * f
    dw = h * df * dv
    if not second:
        return w, dw
    dnum = p * (p - 1.0) * (v * (1.0 - v)) ** (p - 2.0) * (1.0 - 2.0 * v)
    dden = p * (v ** (p - 1.0) - (1.0 - v) ** (p - 1.0))
    ddf = (dnum * den - 2.0 * num * dden) / den**3
    ddw = h * (ddf * dv**2 + df * ddv)
    return w, dw, ddw


def _smooth_eval(curve, t):
    c, s = np.cos(t), np.sin(t)
    if curve.kind == "disk":
        r = curve.radius
        z = r * np.stack([c, s], -1)
        dz = r * np.stack([-s, c], -1)
        return z, dz, -z
    rho = np.sqrt(0.25 + c**2)
    drho = -s * c / rho
    ddrho = (-np.cos(2 * t) - drho**2) / rho
    e = np.stack([c, s], -1)
    et = np.stack([-s, c], -1)
    z = rho[..., None] * e
    dz = drho[..., None] * e + rho[..., None] * et
    ddz = (ddrho - rho)[..., None] * e + 2.0 * drho[..., None] * et
    return z, dz, ddz


def _polygon_eval(curve, t):
    verts = curve.vertices
    m = len(verts)
    corners = curve.corner_params
    h = TWO_PI / m
    t = np.mod(t, TWO_PI)
    k = np.minimum((t // h).astype(int), m - 1)
    tj = corners[k]
    w, dw, ddw = _graded(t, tj, tj + h, curve.grading_p)
    edge = verts[(k + 1) % m] - verts[k]
    frac = ((w - tj) / h)[..., None]
    z = verts[k] + frac * edge
    dz = (dw / h)[..., None] * edge
    ddz = (ddw / h)[..., None] * edge
    return z, dz, ddz


def _graded(t, lo, hi, p):
    # vectorised over panels of equal width
    out = [np.empty_like(t) for _ in range(3)]
    for a in np.unique(lo):
        sel = lo == a
        w, dw, ddw = sigmoid_transform(t[sel], a, hi[sel][0], p, second=True)
        out[0][sel], out[1][sel], out[2][sel] = w, dw, ddw
    return out


def evaluate(curve, t):
    """Point, velocity, acceleration, outward normal and speed at ``t``.

    Works elementwise on arrays.  At a polygon corner the speed is zero;
    the normal returned there is the normalised average of the two
    adjacent edge normals and ``corner`` is flagged.
    """
    t = np.asarray(t, float)
    if curve.kind == "polygon":
        z, dz, ddz = _polygon_eval(curve, t)
    else:
        z, dz, ddz = _smooth_eval(curve, t)
    jac = np.hypot(dz[..., 0], dz[..., 1])
    corner = jac == 0
    with np.errstate(invalid="ignore", divide="ignore"):
        normal = np.stack([dz[..., 1], -dz[..., 0]], -1) / jac[..., None]
    if np.any(corner):
        normal[corner] = _corner_normals(curve, t[corner])
    return {"z": z, "dz": dz, "ddz": ddz, "normal": normal,
            "jacobian": jac, "corner": corner}


def _corner_normals(curve, t):
    verts = curve.vertices
    m = len(verts)
    k = np.rint(np.mod(t, TWO_PI) / (TWO_PI / m)).astype(int) % m
    out = []
    for i in k:
        e_in = verts[i] - verts[i - 1]
        e_out = verts[(i + 1) % m] - verts[i]
        n_in = np.array([e_in[1], -e_in[0]]) / np.hypot(*e_in)
        n_out = np.array([e_out[1], -e_out[0]]) / np.hypot(*e_out)
        n = n_in + n_out
        out.append(n / np.hypot(*n))
    return np.array(out)


@dataclass(frozen=True, eq=False)
class Mesh:
    """Equidistant nodes ``t_j = pi j / n`` with cached geometry."""

    curve: BoundaryCurve
    n: int
    t: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)
    dz: np.ndarray = field(repr=False)
    ddz: np.ndarray = field(repr=False)
    normal: np.ndarray = field(repr=False)
    jacobian: np.ndarray = field(repr=False)
    corner: np.ndarray = field(repr=False)

    @property
    def size(self):
        return 2 * self.n


def build_mesh(curve, n):
    if n < 4:
        raise GeometryError("n must be at least 4")
    t = np.pi * np.arange(2 * n) / n
    g = evaluate(curve, t)
    arrays = {k: np.array(v) for k, v in g.items()}
    for a in arrays.values():
        a.setflags(write=False)
    return Mesh(curve, n, t, arrays["z"], arrays["dz"], arrays["ddz"],
                arrays["normal"], arrays["jacobian"], arrays["corner"])
