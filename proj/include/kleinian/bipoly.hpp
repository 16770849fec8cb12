#pragma once
#include <array>

#include "kleinian/curve.hpp"

namespace kln {

// ---------------------------------------------------------------------------
// Exact calculus in R ⊗ R: polynomials and fractions in the coordinates of an
// ordered pair of points (block 0 = point 1, block 1 = point 2) on one curve.
// ---------------------------------------------------------------------------

// Lift a one-point polynomial into the two-point variable set.
inline MultiPoly lift2(const MultiPoly& p, const CurveModel& m, int block) {
    std::vector<int> idx(m.nv);
    for (int i = 0; i < m.nv; ++i) idx[i] = i + block * m.nv;
    return p.relabel(2 * m.nv, idx);
}

// Normal form applied independently in each point's variable block.
inline MultiPoly normal_form2(const MultiPoly& p, const CurveModel& m) {
    MultiPoly cur = p;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [e, c] : cur.terms) {
            for (int block = 0; block < 2 && !changed; ++block) {
                int off = block * m.nv;
                for (auto& [pat, rhs] : m.rules) {
                    bool divisible = true;
                    for (int i = 0; i < m.nv; ++i)
                        if (e[off + i] < pat[i]) { divisible = false; break; }
                    if (!divisible) continue;
                    std::vector<int> rest = e;
                    for (int i = 0; i < m.nv; ++i) rest[off + i] -= pat[i];
                    MultiPoly shift(2 * m.nv);
                    shift.terms[rest] = c;
                    MultiPoly delta = shift * lift2(rhs, m, block);
                    std::vector<int> key = e;
                    cur.terms.erase(key);
                    cur += delta;
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
    return cur;
}

// A rational function on X × X with controlled denominator: polynomial
// numerator (kept in per-block normal form) over
//   k2(x1)^d0 k3(x1)^d1 kh2(x1)^d2 k2(x2)^d3 k3(x2)^d4 kh2(x2)^d5 (x1-x2)^d6.
struct CurveFraction {
    const CurveModel* m = nullptr;
    MultiPoly num;
    std::array<int, 7> den{};

    CurveFraction() = default;
    explicit CurveFraction(const CurveModel& mm) : m(&mm), num(2 * mm.nv) {}
    CurveFraction(const CurveModel& mm, const MultiPoly& n, std::array<int, 7> d = {})
        : m(&mm), num(normal_form2(n, mm)), den(d) {}

    bool is_zero() const { return num.is_zero(); }

    // The polynomial for denominator slot i (in two-point variables).
    MultiPoly den_factor(int i) const {
        switch (i) {
            case 0: return lift2(m->k2, *m, 0);
            case 1: return lift2(m->k3, *m, 0);
            case 2: return lift2(m->k2h, *m, 0);
            case 3: return lift2(m->k2, *m, 1);
            case 4: return lift2(m->k3, *m, 1);
            case 5: return lift2(m->k2h, *m, 1);
            default:
                return MultiPoly::var(2 * m->nv, 0) - MultiPoly::var(2 * m->nv, m->nv);
        }
    }

    CurveFraction with_den(const std::array<int, 7>& target) const {
        CurveFraction r(*m);
        r.den = target;
        MultiPoly n = num;
        for (int i = 0; i < 7; ++i) {
            if (target[i] < den[i]) throw std::runtime_error("with_den: cannot lower denominator");
            for (int k = den[i]; k < target[i]; ++k) n = n * den_factor(i);
        }
        r.num = normal_form2(n, *m);
        return r;
    }

    CurveFraction operator+(const CurveFraction& o) const {
        std::array<int, 7> t{};
        for (int i = 0; i < 7; ++i) t[i] = std::max(den[i], o.den[i]);
        CurveFraction a = with_den(t), b = o.with_den(t);
        a.num = a.num + b.num;
        return a;
    }
    CurveFraction operator-(const CurveFraction& o) const {
        std::array<int, 7> t{};
        for (int i = 0; i < 7; ++i) t[i] = std::max(den[i], o.den[i]);
        CurveFraction a = with_den(t), b = o.with_den(t);
        a.num = a.num - b.num;
        return a;
    }
    CurveFraction operator*(const CurveFraction& o) const {
        CurveFraction r(*m);
        for (int i = 0; i < 7; ++i) r.den[i] = den[i] + o.den[i];
        r.num = normal_form2(num * o.num, *m);
        return r;
    }
    CurveFraction operator*(const Rat& c) const {
        CurveFraction r = *this;
        r.num = r.num * c;
        return r;
    }
    CurveFraction operator*(const MultiPoly& p) const {  // p in two-point vars
        CurveFraction r = *this;
        r.num = normal_form2(num * p, *m);
        return r;
    }

    // Cancel denominator factors that divide the numerator exactly.
    CurveFraction reduced() const {
        CurveFraction r = *this;
        for (int i = 0; i < 7; ++i) {
            // k-polynomials are monic in x1 (slots 0-2) / x2 (slots 3-5);
            // (x1 - x2) is monic in x1.
            int v = (i >= 3 && i <= 5) ? m->nv : 0;
            while (r.den[i] > 0) {
                MultiPoly q(2 * m->nv);
                if (!divide_exact(r.num, r.den_factor(i), v, &q)) break;
                r.num = q;
                r.den[i] -= 1;
            }
        }
        return r;
    }

    // Derivative along the curve with respect to x of the given block,
    // treating the y's as functions of x via the cover presentation.
    CurveFraction d_along(int block) const {
        const CurveModel& mm = *m;
        int nv = mm.nv, off = block * nv;
        bool g12 = (mm.kind == CurveKind::X12);
        int n = mm.cover_n;

        MultiPoly k2b = lift2(mm.k2, mm, block), k3b = lift2(mm.k3, mm, block);
        MultiPoly khb = g12 ? lift2(mm.k2h, mm, block)
                            : MultiPoly::constant(2 * nv, 1);
        MultiPoly k2p = k2b.derivative(off), k3p = k3b.derivative(off);
        MultiPoly khp = g12 ? khb.derivative(off) : MultiPoly(2 * nv);
        MultiPoly K = k2b * k3b * khb;

        // Logarithmic-derivative exponents (k3, k2, kh2) per y-variable, / n.
        auto log_exps = [&](int yi) -> std::array<int, 3> {
            if (!g12) return yi == 1 ? std::array<int, 3>{1, 2, 0}   // y7
                                     : std::array<int, 3>{2, 1, 0};  // y8
            switch (yi) {
                case 1: return {1, 2, 3};  // y13
                case 2: return {2, 4, 0};  // y14
                case 3: return {3, 0, 3};  // y15
                default: return {4, 2, 0};  // y16
            }
        };

        // d(num)/dx_block scaled by K: plain x-part plus y-chain terms.
        MultiPoly dnum = num.derivative(off) * K;
        for (int yi = 1; yi < nv; ++yi) {
            MultiPoly dy = num.derivative(off + yi);
            if (dy.is_zero()) continue;
            auto ex = log_exps(yi);
            MultiPoly s = (k3p * k2b * khb) * Rat(ex[0], n) + (k2p * k3b * khb) * Rat(ex[1], n) +
                          (khp * k2b * k3b) * Rat(ex[2], n);
            dnum += dy * MultiPoly::var(2 * nv, off + yi) * s;
        }

        // Denominator chain: -num * d(log D).
        int i2 = 3 * block, i3 = 3 * block + 1, ih = 3 * block + 2;
        MultiPoly chain = (k2p * k3b * khb) * Rat(den[i2]) + (k3p * k2b * khb) * Rat(den[i3]) +
                          (khp * k2b * k3b) * Rat(den[ih]);
        MultiPoly T = den_factor(6);
        int eT = den[6] > 0 ? 1 : 0;

        CurveFraction r(mm);
        r.den = den;
        r.den[i2] += 1;
        r.den[i3] += 1;
        r.den[ih] += 1;
        r.den[6] += eT;
        MultiPoly nn = (dnum - num * chain);
        if (eT) nn = nn * T;
        // d/dx1 (x1-x2) = +1, d/dx2 (x1-x2) = -1.
        nn = nn - num * K * Rat(block == 0 ? den[6] : -den[6]);
        r.num = normal_form2(nn, mm);
        return r;
    }

    // Numeric evaluation at a pair of points (requires x1 != x2 if d6 > 0).
    cplx eval(const CurvePoint& p1, const CurvePoint& p2) const {
        const CurveModel& mm = *m;
        auto c1 = coords(mm, p1), c2 = coords(mm, p2);
        std::vector<cplx> pt = c1;
        pt.insert(pt.end(), c2.begin(), c2.end());
        cplx v = num.eval(pt);
        auto kv = [&](const MultiPoly& k, cplx x) {
            return k.eval(std::vector<cplx>(mm.nv, x));
        };
        cplx d = 1.0;
        for (int k = 0; k < den[0]; ++k) d *= kv(mm.k2, p1.x);
        for (int k = 0; k < den[1]; ++k) d *= kv(mm.k3, p1.x);
        for (int k = 0; k < den[2]; ++k) d *= kv(mm.k2h, p1.x);
        for (int k = 0; k < den[3]; ++k) d *= kv(mm.k2, p2.x);
        for (int k = 0; k < den[4]; ++k) d *= kv(mm.k3, p2.x);
        for (int k = 0; k < den[5]; ++k) d *= kv(mm.k2h, p2.x);
        for (int k = 0; k < den[6]; ++k) d *= (p1.x - p2.x);
        return v / d;
    }

    // Swap the two point blocks.
    CurveFraction swapped() const {
        const CurveModel& mm = *m;
        std::vector<int> idx(2 * mm.nv);
        for (int i = 0; i < mm.nv; ++i) { idx[i] = mm.nv + i; idx[mm.nv + i] = i; }
        CurveFraction r(mm);
        r.num = num.relabel(2 * mm.nv, idx);
        r.den = {den[3], den[4], den[5], den[0], den[1], den[2], den[6]};
        // (x2 - x1)^d6 = (-1)^d6 (x1 - x2)^d6
        if (den[6] % 2 == 1) r.num = -r.num;
        return r;
    }
};

}  // namespace kln
