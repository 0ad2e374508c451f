#!/usr/bin/env python3
"""Authors the six bundled environments in maps/ (text map format, 0.1 m cells).

Geometry is built from axis-aligned rectangles: `solid` fills obstacles,
`clear` cuts doorways. Run from the repository root:

    python3 tools/make_bundled_maps.py [--out maps]
"""

import argparse
import math
import os
import random
import sys

RES = 0.1


class Canvas:
    def __init__(self, name, origin, width_m, height_m, entries):
        self.name = name
        self.ox, self.oy = origin
        self.w = int(round(width_m / RES))
        self.h = int(round(height_m / RES))
        self.entries = entries
        self.occ = [[False] * self.w for _ in range(self.h)]  # occ[row][col], row 0 = min y
        for r in range(self.h):
            for c in range(self.w):
                if r in (0, self.h - 1) or c in (0, self.w - 1):
                    self.occ[r][c] = True

    def _span(self, lo, hi, origin, n):
        # Cells whose centers fall inside [lo, hi).
        first = max(0, math.ceil((lo - origin) / RES - 0.5 - 1e-9))
        last = min(n - 1, math.ceil((hi - origin) / RES - 0.5 - 1e-9) - 1)
        return range(first, last + 1)

    def fill(self, x0, y0, x1, y1, value):
        for r in self._span(min(y0, y1), max(y0, y1), self.oy, self.h):
            for c in self._span(min(x0, x1), max(x0, x1), self.ox, self.w):
                if 0 < r < self.h - 1 and 0 < c < self.w - 1:
                    self.occ[r][c] = value

    def solid(self, x0, y0, x1, y1):
        self.fill(x0, y0, x1, y1, True)

    def clear(self, x0, y0, x1, y1):
        self.fill(x0, y0, x1, y1, False)

    def hwall(self, y, x0, x1, t=0.1):
        self.solid(x0, y, x1, y + t)

    def vwall(self, x, y0, y1, t=0.1):
        self.solid(x, y0, x + t, y1)

    def free_area(self):
        return sum(not v for row in self.occ for v in row) * RES * RES

    def check(self, area_lo, area_hi):
        area = self.free_area()
        if not (area_lo <= area <= area_hi):
            sys.exit(f"{self.name}: free area {area:.2f} outside [{area_lo}, {area_hi}]")
        # Connectivity from the first entry (8-connected, as the loader checks).
        start = self.cell_of(*self.entries[0])
        seen = {start}
        stack = [start]
        while stack:
            r, c = stack.pop()
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    n = (r + dr, c + dc)
                    if n not in seen and not self.occ[n[0]][n[1]]:
                        seen.add(n)
                        stack.append(n)
        free = sum(not v for row in self.occ for v in row)
        if len(seen) != free:
            sys.exit(f"{self.name}: {free - len(seen)} free cells unreachable from the entry")
        for x, y in self.entries:
            if self.clearance(x, y) < 0.5:
                sys.exit(f"{self.name}: entry ({x}, {y}) has clearance {self.clearance(x, y):.2f} m")
        return area

    def cell_of(self, x, y):
        return int(math.floor((y - self.oy) / RES)), int(math.floor((x - self.ox) / RES))

    def clearance(self, x, y):
        best = float("inf")
        reach = int(2.0 / RES) + 1
        r0, c0 = self.cell_of(x, y)
        for r in range(max(0, r0 - reach), min(self.h, r0 + reach + 1)):
            for c in range(max(0, c0 - reach), min(self.w, c0 + reach + 1)):
                if self.occ[r][c]:
                    cx0 = self.ox + c * RES
                    cy0 = self.oy + r * RES
                    dx = max(cx0 - x, 0.0, x - (cx0 + RES))
                    dy = max(cy0 - y, 0.0, y - (cy0 + RES))
                    best = min(best, math.hypot(dx, dy))
        return best

    def text(self):
        def num(v):
            return repr(float(v)) if v != int(v) else str(int(v))

        lines = [
            f"name {self.name}",
            f"resolution {RES}",
            f"origin {num(self.ox)} {num(self.oy)}",
            "entries " + " ".join(f"{num(x)},{num(y)}" for x, y in self.entries),
        ]
        for r in reversed(range(self.h)):
            lines.append("".join("#" if v else "." for v in self.occ[r]))
        return "\n".join(lines) + "\n"


def room():
    m = Canvas("room", (-5, -5), 10, 10, [(-3, -3), (0, 3)])
    m.solid(2.0, -3.5, 3.2, -2.5)  # cabinet
    return m, (90, 110)


def apartment():
    m = Canvas("apartment", (-5, -5), 10, 10, [(3.8, -0.8), (-2.5, 2.5)])
    # Central wall with three doorways.
    m.vwall(0.0, -5, 5)
    m.clear(-0.1, -4.2, 0.2, -3.0)
    m.clear(-0.1, -1.6, 0.2, -0.4)
    m.clear(-0.1, 3.0, 0.2, 4.2)
    # Left half: bedroom above, two small rooms below.
    m.hwall(1.0, -5, 0)
    m.clear(-4.2, 0.9, -3.0, 1.2)
    m.vwall(-2.5, -5, 1.0)
    m.clear(-2.6, -2.2, -2.3, -1.0)
    # Right half: kitchen above, living room, bathroom below.
    m.hwall(2.0, 0, 5)
    m.clear(2.8, 1.9, 4.0, 2.2)
    m.hwall(-2.6, 0, 5)
    m.clear(1.0, -2.7, 2.2, -2.4)
    m.solid(3.4, -4.9, 4.9, -4.0)  # bathtub
    m.solid(-4.9, 3.6, -3.4, 4.9)  # bed
    return m, (90, 110)


def office():
    m = Canvas("office", (-10, -5), 20, 11, [(-8.5, -4), (8, 5)])
    # Corridor between y = -0.5 and y = 1.5.
    m.hwall(-0.6, -10, 10)
    m.hwall(1.5, -10, 10)
    # Four offices above the corridor.
    for x in (-5.0, 0.0, 5.0):
        m.vwall(x, 1.5, 6)
    for x0 in (-10.0, -5.0, 0.0, 5.0):
        m.clear(x0 + 1.5, 1.4, x0 + 2.9, 1.7)
        m.solid(x0 + 2.5, 3.2, x0 + 4.5, 4.0)  # desk
    # Three rooms below.
    for x in (-3.4, 3.4):
        m.vwall(x, -5, -0.5)
    for xc in (-6.7, 0.0, 6.7):
        m.clear(xc - 0.7, -0.7, xc + 0.7, -0.4)
    m.solid(-1.0, -4.9, 1.0, -3.9)  # cabinets
    m.solid(5.0, -3.2, 8.5, -2.2)  # meeting table
    return m, (180, 205)


def hallway():
    m = Canvas("hallway", (-10, -11), 20, 22, [(8, 8), (-8, 0)])
    # Solid core; the hallway rings around it.
    m.solid(-4.5, -6.0, 4.5, 6.0)
    # Side rooms carved off the ring.
    m.hwall(-6.0, 4.5, 10)
    m.clear(6.5, -6.1, 8.0, -5.8)
    m.vwall(-4.6, -11, -6.0)
    m.clear(-4.7, -9.5, -4.4, -8.0)
    m.hwall(6.0, -10, -4.5)
    m.clear(-8.0, 5.9, -6.5, 6.2)
    # Pillars and storage blocks.
    for x, y in ((6.5, 0.0), (-7.5, -3.0), (0.0, 8.5), (0.0, -8.5)):
        m.solid(x - 0.5, y - 0.5, x + 0.5, y + 0.5)
    return m, (308, 376)


def maze_house():
    m = Canvas("maze_house", (-10, -5), 20, 20, [(-9, 14), (8, -2)])
    n = 4
    size = 5.0
    x0, y0 = -10.0, -5.0
    rng = random.Random(5)
    # Spanning tree over the 4x4 room grid, plus a few loops.
    edges = []
    for i in range(n):
        for j in range(n):
            if i + 1 < n:
                edges.append(((i, j), (i + 1, j)))
            if j + 1 < n:
                edges.append(((i, j), (i, j + 1)))
    rng.shuffle(edges)
    parent = {(i, j): (i, j) for i in range(n) for j in range(n)}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    doors = []
    extra = []
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            doors.append((a, b))
        else:
            extra.append((a, b))
    doors += extra[:3]
    for k in range(1, n):
        m.vwall(x0 + k * size, y0, y0 + n * size)
        m.hwall(y0 + k * size, x0, x0 + n * size)
    for (i, j), (ii, jj) in doors:
        # Room (i, j): column i along x, row j along y.
        offset = rng.uniform(1.2, size - 2.4)
        if ii != i:
            x = x0 + ii * size
            ystart = y0 + j * size + offset
            m.clear(x - 0.1, ystart, x + 0.2, ystart + 1.2)
        else:
            y = y0 + jj * size
            xstart = x0 + i * size + offset
            m.clear(xstart, y - 0.1, xstart + 1.2, y + 0.2)
    return m, (360, 440)


def school():
    m = Canvas("school", (-35, -35), 70, 70, [(-5, -22), (16.5, 30)])
    t = 0.2
    depth = 10.0
    for sx in (-1, 1):
        for sy in (-1, 1):
            # Quadrant spanning |x|, |y| in [2, 35]; classrooms line its two outer sides.
            def X(u):
                return sx * u

            def Y(v):
                return sy * v

            def rect(u0, v0, u1, v1, fn):
                fn(min(X(u0), X(u1)), min(Y(v0), Y(v1)), max(X(u0), X(u1)), max(Y(v0), Y(v1)))

            inner = 35.0 - depth
            # Wall separating the outer band from the open area.
            rect(2.0, inner - t, inner, inner, m.solid)
            rect(inner - t, 2.0, inner, inner, m.solid)
            # Band along the outer y side: three classrooms with doors.
            cuts = [2.0, 13.0, 24.0, 35.0]
            for a in cuts[1:-1]:
                rect(a, inner, a + t, 35.0, m.solid)
            for a, b in zip(cuts[:-1], cuts[1:-1] + [inner]):
                mid = 0.5 * (a + b)
                rect(mid - 0.8, inner - t - 0.05, mid + 0.8, inner + 0.05, m.clear)
            # Band along the outer x side: two classrooms.
            for a in (13.5,):
                rect(inner, a, 35.0, a + t, m.solid)
            for a, b in ((2.0, 13.5), (13.5, inner)):
                mid = 0.5 * (a + b)
                rect(inner - t - 0.05, mid - 0.8, inner + 0.05, mid + 0.8, m.clear)
            # The corner room opens into the x-side band room next to it.
            rect(inner + 3.0, inner - t - 0.05, inner + 4.6, inner + 0.05, m.clear)
            # Stair core and lockers in the open area.
            rect(9.0, 9.0, 15.0, 15.0, m.solid)
            rect(18.0, 4.0, 22.0, 5.0, m.solid)
    # Walls where the corridors meet the open areas, with wide openings.
    for s in (-1, 1):
        m.solid(-35, s * 2.0 - (t if s > 0 else 0), -28, s * 2.0 + (0 if s > 0 else t))
        m.solid(28, s * 2.0 - (t if s > 0 else 0), 35, s * 2.0 + (0 if s > 0 else t))
    return m, (4050, 4950)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="maps")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for build in (room, apartment, office, hallway, maze_house, school):
        canvas, (lo, hi) = build()
        area = canvas.check(lo, hi)
        path = os.path.join(args.out, f"{canvas.name}.map")
        with open(path, "w", newline="\n") as f:
            f.write(canvas.text())
        print(f"{path}: {canvas.w}x{canvas.h} cells, free area {area:.2f} m^2")


if __name__ == "__main__":
    main()
