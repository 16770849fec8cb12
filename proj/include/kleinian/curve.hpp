#pragma once
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kleinian/multipoly.hpp"
#include "kleinian/semigroup.hpp"

namespace kln {

enum class CurveKind { X4, X12, X6, X7 };

// A pointed curve model: defining relations over (x, y_a), the monomial basis
// ordered by pole order at infinity, branch data of the cyclic-cover
// presentation, and the rewrite rules that put ring elements in normal form.
struct CurveModel {
    CurveKind kind;
    std::string name;
    int genus = 0;
    std::vector<std::string> vars;  // vars[0] = "x", then the y's
    int nv = 0;
    std::vector<long long> var_weights;  // pole order at infinity per variable

    std::vector<Rat> b;       // branch points (distinct, nonzero)
    MultiPoly k2, k3, k2h;    // k2h nonzero only on the genus-12 family
    std::vector<MultiPoly> relations;

    // Directed rewrite rules: y-part pattern -> replacement polynomial.
    std::vector<std::pair<std::vector<int>, MultiPoly>> rules;

    // Monomial bases: exponent vector + pole order, ordered by pole order.
    std::vector<std::pair<std::vector<int>, long long>> phi;    // phi_{H^0} family
    std::vector<std::pair<std::vector<int>, long long>> phiH1;  // phi_{H^1} family (X4 only)

    int cover_n = 0;            // cyclic cover degree of the (x, w)-presentation
    std::vector<int> cover_e;   // branch exponents of w^n = prod (x - b_i)^{e_i}

    NumericalSemigroup sg;

    MultiPoly xpoly(const std::vector<Rat>& coeffs) const {  // coeffs[k] * x^k
        MultiPoly p(nv);
        for (int k = 0; k < (int)coeffs.size(); ++k) {
            std::vector<int> e(nv, 0);
            e[0] = k;
            p.add_term(e, coeffs[k]);
        }
        return p;
    }
    MultiPoly mono(const std::vector<int>& e) const {
        MultiPoly p(nv);
        p.terms[e] = 1;
        return p;
    }
    MultiPoly var(int i, int pow = 1) const { return MultiPoly::var(nv, i, pow); }
    MultiPoly cst(const Rat& c) const { return MultiPoly::constant(nv, c); }
};

namespace detail {
// (x - b_i)(x - b_j)... as a MultiPoly in the model's variable set.
inline MultiPoly root_product(int nv, const std::vector<Rat>& roots) {
    MultiPoly p = MultiPoly::constant(nv, 1);
    for (auto& r : roots) {
        MultiPoly lin = MultiPoly::var(nv, 0) - MultiPoly::constant(nv, r);
        p = p * lin;
    }
    return p;
}

inline void check_moduli(const std::vector<Rat>& b) {
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) throw std::runtime_error("InvalidModuli: zero branch point");
        for (size_t j = i + 1; j < b.size(); ++j)
            if (b[i] == b[j]) throw std::runtime_error("InvalidModuli: repeated branch point");
    }
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Model constructors
// ---------------------------------------------------------------------------

inline CurveModel build_x4(const std::vector<Rat>& b = {1, 2, 3, 4, 5}) {
    if (b.size() != 5) throw std::runtime_error("InvalidModuli: X4 needs 5 branch points");
    detail::check_moduli(b);
    CurveModel m;
    m.kind = CurveKind::X4;
    m.name = "x4";
    m.genus = 4;
    m.vars = {"x", "y7", "y8"};
    m.nv = 3;
    m.var_weights = {3, 7, 8};
    m.b = b;
    m.k3 = detail::root_product(m.nv, {b[0], b[1], b[2]});
    m.k2 = detail::root_product(m.nv, {b[3], b[4]});
    m.k2h = MultiPoly::constant(m.nv, 1);  // trivial on the genus-4 family
    const int X = 0, Y7 = 1, Y8 = 2;
    MultiPoly y7 = m.var(Y7), y8 = m.var(Y8);
    MultiPoly f14 = y7 * y7 - y8 * m.k2;
    MultiPoly f15 = y7 * y8 - m.k2 * m.k3;
    MultiPoly f16 = y8 * y8 - y7 * m.k3;
    m.relations = {f14, f15, f16};
    m.rules = {
        {{0, 2, 0}, y8 * m.k2},
        {{0, 1, 1}, m.k2 * m.k3},
        {{0, 0, 2}, y7 * m.k3},
    };
    m.cover_n = 3;
    m.cover_e = {1, 1, 1, 2, 2};
    m.sg = make_semigroup({3, 7, 8});
    // phi_{H^0}: canonical monomial of each pole order (x^j, x^j y7, x^j y8).
    for (long long w = 0; w <= 40; ++w) {
        if (!semigroup_member(m.sg, w)) continue;
        std::vector<int> e(m.nv, 0);
        if (w % 3 == 0) e[X] = (int)(w / 3);
        else if (w % 3 == 1) { e[Y7] = 1; e[X] = (int)((w - 7) / 3); }
        else { e[Y8] = 1; e[X] = (int)((w - 8) / 3); }
        m.phi.push_back({e, w});
    }
    // phi_{H^1}: x^j y7 (weights 7,10,13,...) and x^j y8 (8,11,14,...), ordered
    // by pole order: y7, y8, x y7, x y8, x^2 y7, x^2 y8, ...
    for (int j = 0; j <= 8; ++j) {
        std::vector<int> e7(m.nv, 0), e8(m.nv, 0);
        e7[Y7] = 1; e7[X] = j;
        e8[Y8] = 1; e8[X] = j;
        m.phiH1.push_back({e7, 7 + 3LL * j});
        m.phiH1.push_back({e8, 8 + 3LL * j});
    }
    return m;
}

inline CurveModel build_x12(const std::vector<Rat>& b = {1, 2, 3, 4, 5, 6, 7}) {
    if (b.size() != 7) throw std::runtime_error("InvalidModuli: X12 needs 7 branch points");
    detail::check_moduli(b);
    CurveModel m;
    m.kind = CurveKind::X12;
    m.name = "x12";
    m.genus = 12;
    m.vars = {"x", "y13", "y14", "y15", "y16"};
    m.nv = 5;
    m.var_weights = {6, 13, 14, 15, 16};
    m.b = b;
    m.k3 = detail::root_product(m.nv, {b[0], b[1], b[2]});
    m.k2 = detail::root_product(m.nv, {b[3], b[4]});
    m.k2h = detail::root_product(m.nv, {b[5], b[6]});
    const int X = 0, A = 1, B = 2, C = 3, D = 4;  // y13, y14, y15, y16
    MultiPoly ya = m.var(A), yb = m.var(B), yc = m.var(C), yd = m.var(D);
    MultiPoly f1 = ya * ya - m.k2h * yb;
    MultiPoly f2 = ya * yb - m.k2 * yc;
    MultiPoly f3 = m.k2h * yb * yb - ya * yc * m.k2;
    MultiPoly f4 = yb * yb - m.k2 * yd;
    MultiPoly f5 = ya * yd - yb * yc;
    MultiPoly f6 = yc * yc - m.k2h * m.k3;
    MultiPoly f7 = yb * yd - m.k2 * m.k3;
    MultiPoly f8 = yc * yd - m.k3 * ya;
    MultiPoly f9 = yd * yd - m.k3 * yb;
    m.relations = {f1, f2, f3, f4, f5, f6, f7, f8, f9};
    // Normal-form target: y-part in {1, y13, y14, y15, y16, y13*y16}.
    m.rules = {
        {{0, 2, 0, 0, 0}, m.k2h * yb},       // y13^2 -> kh2 y14
        {{0, 1, 1, 0, 0}, m.k2 * yc},        // y13 y14 -> k2 y15
        {{0, 1, 0, 1, 0}, m.k2h * yd},       // y13 y15 -> kh2 y16
        {{0, 0, 2, 0, 0}, m.k2 * yd},        // y14^2 -> k2 y16
        {{0, 0, 1, 0, 1}, m.k2 * m.k3},      // y14 y16 -> k2 k3
        {{0, 0, 0, 2, 0}, m.k2h * m.k3},     // y15^2 -> kh2 k3
        {{0, 0, 0, 1, 1}, m.k3 * ya},        // y15 y16 -> k3 y13
        {{0, 0, 0, 0, 2}, m.k3 * yb},        // y16^2 -> k3 y14
        {{0, 0, 1, 1, 0}, ya * yd},          // y14 y15 -> y13 y16 (degree-neutral, last)
    };
    m.cover_n = 6;
    m.cover_e = {1, 1, 1, 2, 2, 3, 3};
    m.sg = make_semigroup({6, 13, 14, 15, 16});
    for (long long w = 0; w <= 80; ++w) {
        if (!semigroup_member(m.sg, w)) continue;
        std::vector<int> e(m.nv, 0);
        long long r = w % 6;
        if (r == 0) e[X] = (int)(w / 6);
        else if (r == 5) { e[A] = 1; e[D] = 1; e[X] = (int)((w - 29) / 6); }
        else { e[(int)r] = 1; e[X] = (int)((w - 12 - r) / 6); }
        m.phi.push_back({e, w});
    }
    return m;
}

// Singular plane models (projections of X4).
inline CurveModel build_x6(const std::vector<Rat>& b = {1, 2, 3, 4, 5}) {
    if (b.size() != 5) throw std::runtime_error("InvalidModuli: X6 needs 5 branch points");
    detail::check_moduli(b);
    CurveModel m;
    m.kind = CurveKind::X6;
    m.name = "x6";
    m.genus = 4;
    m.vars = {"x", "y7"};
    m.nv = 2;
    m.var_weights = {3, 7};
    m.b = b;
    m.k3 = detail::root_product(m.nv, {b[0], b[1], b[2]});
    m.k2 = detail::root_product(m.nv, {b[3], b[4]});
    m.k2h = MultiPoly::constant(m.nv, 1);
    MultiPoly y7 = m.var(1);
    m.relations = {y7.pow(3) - m.k3 * m.k2 * m.k2};
    m.rules = {{{0, 3}, m.k3 * m.k2 * m.k2}};
    m.cover_n = 3;
    m.cover_e = {1, 1, 1, 2, 2};
    m.sg = make_semigroup({3, 7});
    return m;
}

inline CurveModel build_x7(const std::vector<Rat>& b = {1, 2, 3, 4, 5}) {
    if (b.size() != 5) throw std::runtime_error("InvalidModuli: X7 needs 5 branch points");
    detail::check_moduli(b);
    CurveModel m;
    m.kind = CurveKind::X7;
    m.name = "x7";
    m.genus = 4;
    m.vars = {"x", "y8"};
    m.nv = 2;
    m.var_weights = {3, 8};
    m.b = b;
    m.k3 = detail::root_product(m.nv, {b[0], b[1], b[2]});
    m.k2 = detail::root_product(m.nv, {b[3], b[4]});
    m.k2h = MultiPoly::constant(m.nv, 1);
    MultiPoly y8 = m.var(1);
    m.relations = {y8.pow(3) - m.k3 * m.k3 * m.k2};
    m.rules = {{{0, 3}, m.k3 * m.k3 * m.k2}};
    m.cover_n = 3;
    m.cover_e = {2, 2, 2, 1, 1};
    m.sg = make_semigroup({3, 8});
    return m;
}

// Riemann-Hurwitz genus of the cyclic cover w^n = prod (x-b_i)^{e_i}.
inline long long cover_genus(int n, const std::vector<int>& e) {
    long long total = 0;
    long long E = 0;
    for (int ei : e) {
        total += n - std::gcd((long long)n, (long long)ei);
        E += ei;
    }
    total += n - std::gcd((long long)n, E);
    return (total - 2 * n + 2) / 2;
}

// ---------------------------------------------------------------------------
// Normal form (rewrite to the phi-monomial basis)
// ---------------------------------------------------------------------------

inline MultiPoly normal_form(const MultiPoly& p, const CurveModel& m) {
    MultiPoly cur = p;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [e, c] : cur.terms) {
            for (auto& [pat, rhs] : m.rules) {
                bool divisible = true;
                for (int i = 0; i < m.nv; ++i)
                    if (e[i] < pat[i]) { divisible = false; break; }
                if (!divisible) continue;
                std::vector<int> rest(m.nv);
                for (int i = 0; i < m.nv; ++i) rest[i] = e[i] - pat[i];
                MultiPoly repl = rhs * c;
                MultiPoly shift(m.nv);
                shift.terms[rest] = 1;
                MultiPoly delta = shift * repl;
                std::vector<int> key = e;
                Rat coef = c;
                cur.terms.erase(key);
                cur += delta;
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
    return cur;
}

// Signed pole order at infinity of a monomial in curve variables (or their
// reciprocals, via negative exponents) and the root functions w2, w3, w2h.
inline long long weight_of(const CurveModel& m, const std::vector<std::pair<std::string, int>>& mono) {
    long long w = 0;
    bool g12 = (m.kind == CurveKind::X12);
    for (auto& [name, e] : mono) {
        long long vw = -1;
        for (int i = 0; i < m.nv; ++i)
            if (m.vars[i] == name) vw = m.var_weights[i];
        if (vw < 0) {
            if (name == "w2") vw = 2;
            else if (name == "w3") vw = 3;
            else if (name == "w2h" && g12) vw = 2;
            else throw std::runtime_error("UnboundVariable: " + name);
        }
        w += vw * e;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

// A point is x together with root-function values: w2^n = k2(x), w3^n = k3(x),
// w2h^n = k2h(x) with n the cover degree (3 on the X4 family, 6 on X12).
struct CurvePoint {
    cplx x;
    cplx w2 = 0, w3 = 0, w2h = 1;
};

inline std::vector<cplx> y_values(const CurveModel& m, const CurvePoint& p) {
    switch (m.kind) {
        case CurveKind::X4:
            return {p.w3 * p.w2 * p.w2, p.w3 * p.w3 * p.w2};
        case CurveKind::X6:
            return {p.w3 * p.w2 * p.w2};
        case CurveKind::X7:
            return {p.w3 * p.w3 * p.w2};
        case CurveKind::X12: {
            cplx y13 = p.w3 * pow(p.w2, 2) * pow(p.w2h, 3);
            cplx y14 = pow(p.w3, 2) * pow(p.w2, 4);
            cplx y15 = pow(p.w3, 3) * pow(p.w2h, 3);
            cplx y16 = pow(p.w3, 4) * pow(p.w2, 2);
            return {y13, y14, y15, y16};
        }
    }
    return {};
}

inline std::vector<cplx> coords(const CurveModel& m, const CurvePoint& p) {
    std::vector<cplx> c = {p.x};
    for (auto& y : y_values(m, p)) c.push_back(y);
    return c;
}

inline double relation_residual(const CurveModel& m, const CurvePoint& p) {
    auto c = coords(m, p);
    double worst = 0;
    for (auto& f : m.relations) {
        double scale = 0;
        for (auto& [e, co] : f.terms) {
            cplx t = to_cplx(co);
            for (int i = 0; i < m.nv; ++i)
                for (int k = 0; k < e[i]; ++k) t *= c[i];
            scale += std::abs(t);
        }
        double v = std::abs(f.eval(c));
        worst = std::max(worst, v / std::max(scale, 1.0));
    }
    return worst;
}

inline cplx nth_root(cplx z, int n) {  // principal branch
    return std::pow(z, 1.0 / n);
}

// Point above x with sheet indices (j2, j3, j2h) twisting the principal roots.
inline CurvePoint point_above(const CurveModel& m, cplx x, int j2, int j3, int j2h = 0) {
    int n = m.cover_n;
    cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi / n);
    CurvePoint p;
    p.x = x;
    // The k-polynomials only involve x, so pad the evaluation point with x.
    p.w2 = nth_root(m.k2.eval(std::vector<cplx>(m.nv, x)), n) * std::pow(zeta, j2);
    p.w3 = nth_root(m.k3.eval(std::vector<cplx>(m.nv, x)), n) * std::pow(zeta, j3);
    if (m.kind == CurveKind::X12)
        p.w2h = nth_root(m.k2h.eval(std::vector<cplx>(m.nv, x)), n) * std::pow(zeta, j2h);
    else
        p.w2h = 1.0;
    return p;
}

// The cyclic automorphism z_n^k: multiplies w3 by zeta_n^k, which scales y_a by
// zeta_n^{(a mod n) * k} as required.
inline CurvePoint cyclic_action(const CurveModel& m, const CurvePoint& p, int k) {
    CurvePoint q = p;
    cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / m.cover_n);
    q.w3 = p.w3 * zeta;
    return q;
}

// Projection X12 -> X4 sending (y14, y16) to (y7, y8) over the same k2, k3.
inline CurvePoint project_x12_to_x4(const CurvePoint& p) {
    CurvePoint q;
    q.x = p.x;
    q.w2 = p.w2 * p.w2;
    q.w3 = p.w3 * p.w3;
    q.w2h = 1.0;
    return q;
}

}  // namespace kln
