#!/usr/bin/env python3
# Copyright 2026 The Hypercluster Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Derive a closed {p,q} lattice file from a finite quotient of the rotation
triangle group <a, b | a^2, b^q, (ab)^p, extra...>.

Darts are the group elements (cosets of the trivial subgroup, found by
Todd-Coxeter enumeration). Right multiplication by `a` reverses a dart, by
`b` rotates it counterclockwise around its origin vertex, and faces are the
orbits of dart -> (dart * a) * b^-1.

The extra relator is written as a word in x = ab and y = ab^-1 (capital
letters are inverses), e.g. `XYXXYX`.

Alternatively the quotient is given by permutation images of a and b
(`--perms`), each a list of cycles such as "0 2,3 8,5 6"; the darts are then
the elements of the permutation group they generate.

Usage: gen_regular_map.py P Q WORD [--max-cosets N] [--name NAME] > out.lat
       gen_regular_map.py P Q --perms A B [--name NAME] > out.lat
"""
import argparse
import sys

from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group


def coset_table(p, q, word, max_cosets):
    free, a, b = free_group("a b")
    x, y = a * b, a * b**-1
    extra = free.identity
    for c in word:
        extra = extra * {"x": x, "y": y, "X": x**-1, "Y": y**-1}[c]
    group = FpGroup(free, [a**2, b**q, (a * b) ** p, extra])
    table = group.coset_enumeration([], max_cosets=max_cosets)
    table.compress()
    table.standardize()
    # Columns follow the generator order a, a^-1, b, b^-1.
    rows = table.table
    mul_a = [r[0] for r in rows]
    mul_b = [r[2] for r in rows]
    mul_b_inv = [r[3] for r in rows]
    return mul_a, mul_b, mul_b_inv


def parse_cycles(text, degree):
    perm = list(range(degree))
    for cyc in text.split(","):
        pts = [int(t) for t in cyc.split()]
        for i, pt in enumerate(pts):
            perm[pt] = pts[(i + 1) % len(pts)]
    return tuple(perm)


def perm_tables(a_text, b_text):
    pts = [int(t) for t in (a_text + " " + b_text).replace(",", " ").split()]
    degree = max(pts) + 1
    gens = [parse_cycles(a_text, degree), parse_cycles(b_text, degree)]

    def compose(g, h):
        # Apply g, then h.
        return tuple(h[g[i]] for i in range(degree))

    identity = tuple(range(degree))
    index = {identity: 0}
    elements = [identity]
    for g in elements:
        for h in gens:
            gh = compose(g, h)
            if gh not in index:
                index[gh] = len(elements)
                elements.append(gh)
    b_inv = tuple(sorted(range(degree), key=lambda i: gens[1][i]))
    mul_a = [index[compose(g, gens[0])] for g in elements]
    mul_b = [index[compose(g, gens[1])] for g in elements]
    mul_b_inv = [index[compose(g, b_inv)] for g in elements]
    return mul_a, mul_b, mul_b_inv


def orbits(perm):
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


def build(p, q, mul_a, mul_b, mul_b_inv):
    n = len(mul_a)
    face_perm = [mul_b_inv[mul_a[d]] for d in range(n)]
    edge_orbits = orbits(mul_a)
    vert_orbits = orbits(mul_b)
    face_orbits = orbits(face_perm)
    if any(len(o) != 2 for o in edge_orbits):
        raise SystemExit("a does not act as a fixed-point-free involution")
    if any(len(o) != q for o in vert_orbits):
        raise SystemExit("b does not have exact order %d on darts" % q)
    if any(len(o) != p for o in face_orbits):
        raise SystemExit("ab does not have exact order %d on darts" % p)
    edge_of = [0] * n
    for e, (d0, d1) in enumerate(edge_orbits):
        edge_of[d0] = e
        edge_of[d1] = e
    vert_of = [0] * n
    for v, orb in enumerate(vert_orbits):
        for d in orb:
            vert_of[d] = v
    edges = []
    for d0, d1 in edge_orbits:
        edges.append((vert_of[d0], vert_of[d1]))
    faces = [[edge_of[d] for d in orb] for orb in face_orbits]
    verts = [[edge_of[d] for d in orb] for orb in vert_orbits]
    return edges, faces, verts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("p", type=int)
    ap.add_argument("q", type=int)
    ap.add_argument("word", nargs="?")
    ap.add_argument("--perms", nargs=2, metavar=("A", "B"))
    ap.add_argument("--max-cosets", type=int, default=20000)
    ap.add_argument("--name", default=None)
    args = ap.parse_args()
    if args.perms:
        mul_a, mul_b, mul_b_inv = perm_tables(*args.perms)
        source = "images a -> (%s), b -> (%s)" % tuple(args.perms)
    elif args.word:
        mul_a, mul_b, mul_b_inv = coset_table(args.p, args.q, args.word, args.max_cosets)
        source = "<a,b | a^2, b^%d, (ab)^%d, %s> with x=ab, y=ab^-1" % (args.q, args.p, args.word)
    else:
        ap.error("give a relator word or --perms")
    edges, faces, verts = build(args.p, args.q, mul_a, mul_b, mul_b_inv)
    out = sys.stdout
    name = args.name or "{%d,%d} E=%d" % (args.p, args.q, len(edges))
    out.write("# %s\n" % name)
    out.write("# rotation group %s\n" % source)
    out.write("pq %d %d\n" % (args.p, args.q))
    for e, (u, v) in enumerate(edges):
        out.write("edge %d %d %d\n" % (e, u, v))
    for f, cyc in enumerate(faces):
        out.write("face %d %s\n" % (f, " ".join(map(str, cyc))))
    for v, cyc in enumerate(verts):
        out.write("vertex %d %s\n" % (v, " ".join(map(str, cyc))))


if __name__ == "__main__":
    main()
