#pragma once
#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>

#include "kleinian/curve.hpp"

namespace kln {

// ---------------------------------------------------------------------------
// Monomial curves (the degenerate semigroup-ring fibers)
// ---------------------------------------------------------------------------

// Generators of the toric ideal for H4 over (Z3, Z7, Z8).
inline std::vector<MultiPoly> monomial_curve_h4() {
    int nv = 3;  // Z3, Z7, Z8
    auto Z = [&](int i, int p = 1) { return MultiPoly::var(nv, i, p); };
    return {
        Z(1, 2) - Z(0, 2) * Z(2),  // Z7^2 - Z3^2 Z8
        Z(1) * Z(2) - Z(0, 5),     // Z7 Z8 - Z3^5
        Z(2, 2) - Z(0, 3) * Z(1),  // Z8^2 - Z3^3 Z7
    };
}

// Generators of the toric ideal for H12 over (Z6, Z13, Z14, Z15, Z16).
inline std::vector<MultiPoly> monomial_curve_h12() {
    int nv = 5;
    auto Z = [&](int i, int p = 1) { return MultiPoly::var(nv, i, p); };
    return {
        Z(1, 2) - Z(0, 2) * Z(2),        // Z13^2 - Z6^2 Z14
        Z(1) * Z(2) - Z(0, 2) * Z(3),    // Z13 Z14 - Z6^2 Z15
        Z(2, 2) - Z(1) * Z(3),           // Z14^2 - Z13 Z15
        Z(2, 2) - Z(0, 2) * Z(4),        // Z14^2 - Z6^2 Z16
        Z(1) * Z(4) - Z(2) * Z(3),       // Z13 Z16 - Z14 Z15
        Z(3, 2) - Z(0, 5),               // Z15^2 - Z6^5
        Z(2) * Z(4) - Z(0, 5),           // Z14 Z16 - Z6^5
        Z(3) * Z(4) - Z(0, 3) * Z(1),    // Z15 Z16 - Z6^3 Z13
        Z(4, 2) - Z(0, 3) * Z(2),        // Z16^2 - Z6^3 Z14
    };
}

// Substitute Z_a -> t^a and check each generator vanishes identically.
inline bool monomial_curve_kernel_check(const std::vector<MultiPoly>& gens,
                                        const std::vector<long long>& degrees) {
    for (auto& f : gens) {
        // Collapse each monomial to a power of t.
        std::map<long long, Rat> univ;
        for (auto& [e, c] : f.terms) {
            long long d = 0;
            for (size_t i = 0; i < degrees.size(); ++i) d += e[i] * degrees[i];
            univ[d] += c;
        }
        for (auto& [d, c] : univ)
            if (c != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Jacobian smoothness checks
// ---------------------------------------------------------------------------

inline int numeric_rank(const Eigen::MatrixXcd& J, double rel_tol = 1e-8) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    auto sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double top = sv(0);
    if (top == 0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * top) ++r;
    return r;
}

inline Eigen::MatrixXcd jacobian_matrix(const std::vector<MultiPoly>& rels, int nv,
                                        const std::vector<cplx>& pt) {
    Eigen::MatrixXcd J(rels.size(), nv);
    for (size_t i = 0; i < rels.size(); ++i)
        for (int j = 0; j < nv; ++j) J(i, j) = rels[i].derivative(j).eval(pt);
    return J;
}

inline int jacobian_rank(const CurveModel& m, const CurvePoint& p, double rel_tol = 1e-8) {
    if (relation_residual(m, p) > 1e-6)
        throw std::runtime_error("NotOnCurve");
    return numeric_rank(jacobian_matrix(m.relations, m.nv, coords(m, p)), rel_tol);
}

// ---------------------------------------------------------------------------
// Second affine chart (coordinates at infinity): xb = 1/x, yb_a = y_a / x^3.
// ---------------------------------------------------------------------------

inline std::vector<MultiPoly> second_chart_relations(const CurveModel& m) {
    int nv = m.nv;
    auto revpoly = [&](const std::vector<Rat>& roots) {
        // prod (1 - b xb) as a polynomial in xb (variable slot 0)
        MultiPoly p = MultiPoly::constant(nv, 1);
        for (auto& r : roots) {
            MultiPoly lin = MultiPoly::constant(nv, 1) - MultiPoly::var(nv, 0) * r;
            p = p * lin;
        }
        return p;
    };
    auto V = [&](int i, int p = 1) { return MultiPoly::var(nv, i, p); };
    if (m.kind == CurveKind::X4) {
        MultiPoly kb3 = revpoly({m.b[0], m.b[1], m.b[2]});
        MultiPoly kb2 = revpoly({m.b[3], m.b[4]});
        MultiPoly xb = V(0), y7 = V(1), y8 = V(2);
        return {
            y7 * y7 - y8 * xb * kb2,
            y7 * y8 - xb * kb2 * kb3,
            y8 * y8 - y7 * kb3,  // k3/x^3 = kb3 with no xb factor (deg k3 = 3)
        };
    }
    if (m.kind == CurveKind::X12) {
        MultiPoly kb3 = revpoly({m.b[0], m.b[1], m.b[2]});
        MultiPoly kb2 = revpoly({m.b[3], m.b[4]});
        MultiPoly kb2h = revpoly({m.b[5], m.b[6]});
        MultiPoly xb = V(0), a = V(1), bb = V(2), c = V(3), d = V(4);
        return {
            a * a - xb * kb2h * bb,
            a * bb - xb * kb2 * c,
            kb2h * bb * bb - kb2 * a * c,
            bb * bb - xb * kb2 * d,
            a * d - bb * c,
            c * c - xb * kb2h * kb3,
            bb * d - xb * kb2 * kb3,
            c * d - kb3 * a,
            d * d - kb3 * bb,
        };
    }
    throw std::runtime_error("second chart only defined for x4/x12");
}

// The 5-variable chart above is singular at its origin for x12: the chart
// coordinates vanish there to orders (6,5,4,3,2) in the local parameter, and
// that order set misses 1, so the Zariski tangent space is 2-dimensional and
// the Jacobian rank is 3, not 4.  Adjoining z = y13 y16 / x^5 (local order
// 30 - 29 = 1) yields an embedding that is smooth at infinity; the Jacobian
// of the extended relations has rank 5 everywhere on the chart.
inline std::vector<MultiPoly> extended_chart_relations_x12(const CurveModel& m) {
    if (m.kind != CurveKind::X12)
        throw std::runtime_error("extended chart only defined for x12");
    int nv = 6;  // xb, y13b, y14b, y15b, y16b, zb
    auto revpoly = [&](std::initializer_list<int> idx) {
        MultiPoly p = MultiPoly::constant(nv, 1);
        for (int i : idx)
            p = p * (MultiPoly::constant(nv, 1) - MultiPoly::var(nv, 0) * m.b[i]);
        return p;
    };
    MultiPoly kb3 = revpoly({0, 1, 2});
    MultiPoly kb2 = revpoly({3, 4});
    MultiPoly kb2h = revpoly({5, 6});
    auto V = [&](int i, int p = 1) { return MultiPoly::var(nv, i, p); };
    MultiPoly xb = V(0), a = V(1), bb = V(2), c = V(3), d = V(4), z = V(5);
    return {
        a * a - xb * kb2h * bb,
        a * bb - xb * kb2 * c,
        kb2h * bb * bb - kb2 * a * c,
        bb * bb - xb * kb2 * d,
        a * d - bb * c,
        c * c - xb * kb2h * kb3,
        bb * d - xb * kb2 * kb3,
        c * d - kb3 * a,
        d * d - kb3 * bb,
        a * d - z * xb,                   // y13b y16b = zb xb
        z * a - xb * kb2 * kb2h * kb3,    // zb y13b
        z * bb - kb2 * kb3 * a,           // zb y14b
        z * c - kb2h * kb3 * bb,          // zb y15b
        z * d - kb2 * kb3 * c,            // zb y16b
        z * z - kb2 * kb2h * kb3 * d,     // zb^2
    };
}

inline std::vector<cplx> extended_chart_coords(const CurveModel& m, const CurvePoint& p) {
    auto c = coords(m, p);
    std::vector<cplx> out = {1.0 / c[0]};
    for (int i = 1; i < m.nv; ++i) out.push_back(c[i] / std::pow(c[0], 3));
    out.push_back(c[1] * c[4] / std::pow(c[0], 5));  // y13 y16 / x^5
    return out;
}

inline int extended_chart_rank(const CurveModel& m, const std::vector<cplx>& chart_pt,
                               double rel_tol = 1e-8) {
    auto rels = extended_chart_relations_x12(m);
    return numeric_rank(jacobian_matrix(rels, 6, chart_pt), rel_tol);
}

// Map an affine point into the second chart: (1/x, y_a / x^3).
inline std::vector<cplx> second_chart_coords(const CurveModel& m, const CurvePoint& p) {
    auto c = coords(m, p);
    std::vector<cplx> out = {1.0 / c[0]};
    for (int i = 1; i < m.nv; ++i) out.push_back(c[i] / std::pow(c[0], 3));
    return out;
}

inline int second_chart_rank(const CurveModel& m, const std::vector<cplx>& chart_pt,
                             double rel_tol = 1e-8) {
    auto rels = second_chart_relations(m);
    return numeric_rank(jacobian_matrix(rels, m.nv, chart_pt), rel_tol);
}

// ---------------------------------------------------------------------------
// Seeded random points
// ---------------------------------------------------------------------------

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    double uniform(double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(eng);
    }
    int integer(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng);
    }
};

// Sample x on an annulus around the branch-point centroid, keeping a safe
// distance from every branch point, and choose a uniform random sheet.
inline CurvePoint random_point(const CurveModel& m, Rng& rng, double min_dist = 0.3) {
    for (int tries = 0; tries < 1000; ++tries) {
        double cx = 0;
        for (auto& bb : m.b) cx += to_double(bb);
        cx /= m.b.size();
        double r = rng.uniform(0.5, 6.0);
        double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
        cplx x = cplx(cx, 0) + std::polar(r, th);
        bool ok = std::abs(x) > min_dist;
        for (auto& bb : m.b) ok = ok && std::abs(x - to_cplx(bb)) > min_dist;
        if (!ok) continue;
        int n = m.cover_n;
        return point_above(m, x, rng.integer(0, n - 1), rng.integer(0, n - 1),
                           m.kind == CurveKind::X12 ? rng.integer(0, n - 1) : 0);
    }
    throw std::runtime_error("failed to sample a point away from branch points");
}

// All points of the fiber over a branch point b_i (where some root function
// vanishes).  Returned with exact zero w-values.
inline std::vector<CurvePoint> branch_fiber(const CurveModel& m, int i) {
    cplx bx = to_cplx(m.b[i]);
    int n = m.cover_n;
    std::vector<CurvePoint> pts;
    bool in_k3 = i < 3;
    bool in_k2 = (i == 3 || i == 4);
    bool in_k2h = (i >= 5);
    if (m.kind == CurveKind::X4 || m.kind == CurveKind::X6 || m.kind == CurveKind::X7) {
        CurvePoint p = point_above(m, bx, 0, 0);
        if (in_k3) p.w3 = 0; else p.w2 = 0;
        pts.push_back(p);  // totally ramified: single point (b, 0, 0)
        return pts;
    }
    // X12: the fiber size is gcd(6, e_i).
    if (in_k3) {
        CurvePoint p = point_above(m, bx, 0, 0, 0);
        p.w3 = 0;
        pts.push_back(p);
    } else if (in_k2) {
        for (int j = 0; j < 2; ++j) {  // y15 = w3^3 w2h^3 takes two values (+/-)
            CurvePoint p = point_above(m, bx, 0, 3 * j, 0);
            p.w2 = 0;
            pts.push_back(p);
        }
    } else if (in_k2h) {
        for (int j = 0; j < 3; ++j) {  // y14, y16 take three values
            CurvePoint p = point_above(m, bx, 2 * j, 0, 0);
            p.w2h = 0;
            pts.push_back(p);
        }
    }
    return pts;
}

}  // namespace kln
