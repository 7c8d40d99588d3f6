"""Shared test utilities: distances to boundary polylines."""


def seg_dist(p, q0, q1):
    """Euclidean distance from point p to the segment q0-q1."""
    px, py = p
    x0, y0 = q0
    x1, y1 = q1
    dx, dy = x1 - x0, y1 - y0
    den = dx * dx + dy * dy
    if den == 0.0:
        return ((px - x0) ** 2 + (py - y0) ** 2) ** 0.5
    t = ((px - x0) * dx + (py - y0) * dy) / den
    t = max(0.0, min(1.0, t))
    cx, cy = x0 + t * dx, y0 + t * dy
    return ((px - cx) ** 2 + (py - cy) ** 2) ** 0.5


def polyline_distance(p, corners):
    """Distance from p to a boundary polyline given as Corner records."""
    pts = [(float(c.a.value), float(c.b.value)) for c in corners]
    if not pts:
        return float("inf")
    if len(pts) == 1:
        return seg_dist(p, pts[0], pts[0])
    return min(seg_dist(p, a, b) for a, b in zip(pts, pts[1:]))
