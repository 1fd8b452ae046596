"""Deterministic synthesis cases shared by several test modules."""
import numpy as np

from conftest import random_bloch, random_unit
from pqc import affine_span, synthesize


def surface_pair(rng):
    pts = random_unit(rng, 2)
    return pts, None


def interior_line(rng):
    pts = random_unit(rng, 2)
    p = affine_span(pts).ball_radius
    return pts, random_unit(rng) * p * rng.uniform(0.05, 0.95)


def plane_at(rng, r):
    pts = random_unit(rng, 3)
    p = affine_span(pts).ball_radius
    return pts, random_unit(rng) * p * r


def cases(seed=7, per_kind=20):
    """``(label, plaintexts, target)`` triples over every construction."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(per_kind):
        out.append(("two_state_surface", *surface_pair(rng)))
        out.append(("two_state_interior", *interior_line(rng)))
        for r in (1.0, 0.75, 0.5, 0.25, 0.0):
            out.append((f"three_state_r{r}", *plane_at(rng, r)))
        out.append(("single_pure_surface", random_unit(rng)[None, :], None))
        u = random_unit(rng)
        out.append(("single_pure_interior", u[None, :], random_unit(rng) * rng.uniform(0.05, 0.95)))
        out.append(("full_ball", random_bloch(rng, 4), None))
    out.append(("antipodal", np.array([[0, 0, 1.0], [0, 0, -1.0]]), None))
    return out


def reports(seed=7, per_kind=20):
    return [(label, pts, synthesize(pts, tgt)) for label, pts, tgt in cases(seed, per_kind)]
