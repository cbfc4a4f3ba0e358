#!/usr/bin/env python3
"""Regenerates src/quadrature_tables.cpp.

Triangle rules are collapsed (Duffy) products of Gauss-Legendre and
Gauss-Jacobi(1,0) rules; edge rules are Gauss-Legendre on [0,1]. All weights
are positive and all points are interior.
"""
import math
import sys

from scipy.special import roots_jacobi, roots_legendre

MAX_TRIANGLE_DEGREE = 10
MAX_EDGE_DEGREE = 12


def gauss_legendre01(m):
    t, w = roots_legendre(m)
    return [(ti + 1.0) / 2.0 for ti in t], [wi / 2.0 for wi in w]


def gauss_jacobi01(m):
    # weight (1 - eta) on [0, 1]
    t, w = roots_jacobi(m, 1.0, 0.0)
    return [(ti + 1.0) / 2.0 for ti in t], [wi / 4.0 for wi in w]


def triangle_rule(degree):
    m = max(1, math.ceil((degree + 1) / 2))
    xi, wxi = gauss_legendre01(m)
    eta, weta = gauss_jacobi01(m)
    pts, wts = [], []
    for j in range(m):
        for i in range(m):
            x = xi[i] * (1.0 - eta[j])
            y = eta[j]
            pts.append((1.0 - x - y, x, y))
            wts.append(wxi[i] * weta[j])
    return pts, wts


def edge_rule(degree):
    m = max(1, math.ceil((degree + 1) / 2))
    return gauss_legendre01(m)


def fmt(v):
    return repr(float(v))


def main(out):
    lines = []
    lines.append("// Generated by tools/gen_quadrature.py. Do not edit by hand.")
    lines.append("")
    lines.append('#include "quadrature_tables.hpp"')
    lines.append("")
    lines.append("namespace curlstokes::detail {")
    lines.append("")
    lines.append("const std::array<RawTriangleRule, %d> kTriangleRules = {{" % MAX_TRIANGLE_DEGREE)
    for d in range(1, MAX_TRIANGLE_DEGREE + 1):
        pts, wts = triangle_rule(d)
        lines.append("    // degree %d, %d points" % (d, len(wts)))
        lines.append("    {%d, {" % d)
        for p, w in zip(pts, wts):
            lines.append("        {{%s, %s, %s}, %s}," % (fmt(p[0]), fmt(p[1]), fmt(p[2]), fmt(w)))
        lines.append("    }},")
    lines.append("}};")
    lines.append("")
    lines.append("const std::array<RawEdgeRule, %d> kEdgeRules = {{" % MAX_EDGE_DEGREE)
    for d in range(1, MAX_EDGE_DEGREE + 1):
        pts, wts = edge_rule(d)
        lines.append("    // degree %d, %d points" % (d, len(wts)))
        lines.append("    {%d, {" % d)
        for p, w in zip(pts, wts):
            lines.append("        {%s, %s}," % (fmt(p), fmt(w)))
        lines.append("    }},")
    lines.append("}};")
    lines.append("")
    lines.append("}  // namespace curlstokes::detail")
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/quadrature_tables.cpp")
