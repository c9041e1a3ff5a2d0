"""Triangulated surfaces of revolution and OBJ export.

For ``n > 3`` the mesh is the three-dimensional slice through the axis and
one rotation plane (all other angles frozen at zero), which is again a surface
of revolution of the same profile.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .curves import EndpointKind, GeneratingCurve
from .errors import ParameterError, ResolutionTooLow


@dataclass
class MeshModel:
    vertices: np.ndarray
    faces: np.ndarray
    attribution: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ParameterError("face index out of range")

    def face_normals(self) -> np.ndarray:
        """Unnormalised normals ``(b - a) x (c - a)``; their length is twice the area."""
        a, b, c = (self.vertices[self.faces[:, i]] for i in range(3))
        return np.cross(b - a, c - a)

    def area(self) -> float:
        return float(0.5 * np.linalg.norm(self.face_normals(), axis=1).sum())

    def is_closed(self) -> bool:
        """Every edge is shared by exactly two faces, with opposite directions."""
        edges = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        directed = {tuple(e) for e in edges.tolist()}
        if len(directed) != len(edges):
            return False
        return all((b, a) in directed for a, b in directed)

    def to_obj(self, fh=None) -> str:
        """ASCII OBJ with ``v`` and 1-based ``f`` records."""
        buf = io.StringIO()
        for key, val in self.attribution.items():
            buf.write(f"# {key}: {val}\n")
        for x, y, z in self.vertices:
            buf.write(f"v {x:.17g} {y:.17g} {z:.17g}\n")
        for a, b, c in self.faces + 1:
            buf.write(f"f {a} {b} {c}\n")
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def read_obj(text: str) -> MeshModel:
    """Parse ``v`` and ``f`` records (``f a/b/c`` style indices keep the vertex part)."""
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
    return MeshModel(np.array(verts), np.array(faces, dtype=np.int64))


def revolve_mesh(curve: GeneratingCurve, angular_resolution: int = 64, curve_id: str = "") -> MeshModel:
    """Revolve the sampled profile about the vertical axis.

    Each sample becomes a ring of ``angular_resolution`` vertices, except a
    :attr:`EndpointKind.SMOOTH_POLE` end, which becomes a single vertex joined
    to the neighbouring ring by a fan.  Faces wind counter-clockwise seen from
    outside.
    """
    if angular_resolution < 8:
        raise ResolutionTooLow(f"angular resolution must be at least 8, got {angular_resolution}")
    N = int(angular_resolution)
    theta = 2 * np.pi * np.arange(N) / N
    c, s = np.cos(theta), np.sin(theta)
    phi, psi = np.asarray(curve.phi), np.asarray(curve.psi)
    M = len(phi)
    pole = [curve.endpoints[0] is EndpointKind.SMOOTH_POLE, curve.endpoints[1] is EndpointKind.SMOOTH_POLE]
    rows = list(range(1 if pole[0] else 0, M - 1 if pole[1] else M))
    if not rows:
        raise ParameterError("the curve has no interior samples to revolve")
    verts = [np.column_stack([phi[i] * c, phi[i] * s, np.full(N, psi[i])]) for i in rows]
    ring = {i: k * N for k, i in enumerate(rows)}
    verts = np.vstack(verts)
    extra = []
    faces = []
    j = np.arange(N)
    jn = (j + 1) % N
    for i in rows[:-1]:
        a, b = ring[i] + j, ring[i] + jn
        cc, d = ring[i + 1] + jn, ring[i + 1] + j
        faces.append(np.column_stack([a, b, cc]))
        faces.append(np.column_stack([a, cc, d]))
    nv = len(verts)
    if pole[0]:
        extra.append([0.0, 0.0, psi[0]])
        p = nv + len(extra) - 1
        first = ring[rows[0]]
        faces.append(np.column_stack([np.full(N, p), first + jn, first + j]))
    if pole[1]:
        extra.append([0.0, 0.0, psi[-1]])
        p = nv + len(extra) - 1
        last = ring[rows[-1]]
        faces.append(np.column_stack([last + j, last + jn, np.full(N, p)]))
    if extra:
        verts = np.vstack([verts, np.array(extra)])
    attribution = {"source": curve_id or curve.metadata.get("solver", "curve"),
                   "samples": M, "angular_resolution": N}
    return MeshModel(verts, np.vstack(faces), attribution)
