#pragma once
#include <optional>
#include <tuple>

#include "kleinian/bipoly.hpp"

namespace kln {

// ---------------------------------------------------------------------------
// One-forms  (numerator / (nfac * y-monomial)) dx  on a curve model.
// ---------------------------------------------------------------------------

struct OneForm {
    MultiPoly num;          // one-point variables
    std::vector<int> yden;  // denominator y-exponents (index 0 unused)
    int nfac = 1;

    cplx eval(const CurveModel& m, const CurvePoint& p) const {
        auto c = coords(m, p);
        cplx d = (double)nfac;
        for (int i = 1; i < m.nv; ++i)
            for (int k = 0; k < yden[i]; ++k) d *= c[i];
        return num.eval(c) / d;
    }
};

namespace detail {
// 1 / (y-monomial) as (numerator, k-denominator exponents (k2, k3, kh2)).
inline std::pair<MultiPoly, std::array<int, 3>> y_inverse(const CurveModel& m,
                                                          const std::vector<int>& yden) {
    auto V = [&](int i) { return MultiPoly::var(m.nv, i); };
    MultiPoly one = MultiPoly::constant(m.nv, 1);
    if (m.kind == CurveKind::X4) {
        int e7 = yden[1], e8 = yden[2];
        if (e7 == 0 && e8 == 0) return {one, {0, 0, 0}};
        if (e7 == 1 && e8 == 0) return {V(2), {1, 1, 0}};  // 1/y7 = y8/(k2 k3)
        if (e7 == 0 && e8 == 1) return {V(1), {1, 1, 0}};  // 1/y8 = y7/(k2 k3)
        if (e7 == 1 && e8 == 1) return {one, {1, 1, 0}};   // 1/(y7 y8) = 1/(k2 k3)
    } else if (m.kind == CurveKind::X12) {
        std::array<int, 4> e = {yden[1], yden[2], yden[3], yden[4]};
        if (e == std::array<int, 4>{0, 0, 0, 0}) return {one, {0, 0, 0}};
        if (e == std::array<int, 4>{1, 0, 0, 0}) return {V(1) * V(4), {1, 1, 1}};  // 1/y13
        if (e == std::array<int, 4>{0, 1, 0, 0}) return {V(4), {1, 1, 0}};         // 1/y14
        if (e == std::array<int, 4>{0, 0, 1, 0}) return {V(3), {0, 1, 1}};         // 1/y15
        if (e == std::array<int, 4>{0, 0, 0, 1}) return {V(2), {1, 1, 0}};         // 1/y16
        if (e == std::array<int, 4>{1, 0, 0, 1}) return {V(1), {1, 1, 1}};         // 1/(y13 y16)
    }
    throw std::runtime_error("y_inverse: unsupported denominator shape");
}
}  // namespace detail

// A one-form as a two-point fraction located in the given block; the result is
// the coefficient of dx at that point.
inline CurveFraction as_fraction(const CurveModel& m, const OneForm& f, int block) {
    auto [inv, kden] = detail::y_inverse(m, f.yden);
    CurveFraction r(m);
    r.num = normal_form2(lift2(f.num * inv, m, block), m) * Rat(1, f.nfac);
    r.den = {};
    for (int i = 0; i < 3; ++i) r.den[3 * block + i] = kden[i];
    return r;
}

// ---------------------------------------------------------------------------
// Bases of the first kind
// ---------------------------------------------------------------------------

inline std::vector<OneForm> holomorphic_basis(const CurveModel& m) {
    std::vector<OneForm> out;
    if (m.kind == CurveKind::X4) {
        for (int i = 0; i < 4; ++i) {
            OneForm f;
            f.num = m.mono(m.phiH1[i].first);
            f.yden = {0, 1, 1};
            f.nfac = 3;
            out.push_back(f);
        }
    } else if (m.kind == CurveKind::X12) {
        for (int i = 0; i < 12; ++i) {
            OneForm f;
            f.num = m.mono(m.phi[i].first);
            f.yden = {0, 1, 0, 0, 1};
            f.nfac = 6;
            out.push_back(f);
        }
    } else {
        throw std::runtime_error("holomorphic basis only for x4/x12");
    }
    return out;
}

// Cancel common y-content between a monomial numerator and the y-denominator,
// using y14 y15 = y13 y16 and the pairing y_a * y_b = (k-product) when a+b=29.
inline OneForm reduced_form(const CurveModel& m, const OneForm& f) {
    if (m.kind != CurveKind::X12 || f.num.terms.size() != 1) return f;
    OneForm r = f;
    if (f.yden != std::vector<int>{0, 1, 0, 0, 1}) return f;
    auto e = f.num.terms.begin()->first;
    Rat c = f.num.terms.begin()->second;
    // numerator y-part index (at most one y with exponent 1 in the phi basis)
    int yi = 0;
    for (int i = 1; i < m.nv; ++i)
        if (e[i] == 1) yi = i;
    if (yi == 0) return f;  // pure power of x: keep 1/(y13 y16)
    std::vector<int> e2 = e;
    e2[yi] = 0;
    r.num = MultiPoly(m.nv);
    r.num.terms[e2] = c;
    r.yden = std::vector<int>(m.nv, 0);
    // y13/(y13 y16) = 1/y16, y14/(y13 y16) = y14/(y14 y15) = 1/y15, etc.
    r.yden[m.nv - yi] = 1;
    return r;
}

// ---------------------------------------------------------------------------
// The kernel Sigma and its derived two-forms
// ---------------------------------------------------------------------------

// Coefficient of dx_1 in Sigma(P1, P2), as an exact fraction.
inline CurveFraction sigma_fraction(const CurveModel& m) {
    int nv = m.nv;
    auto v = [&](int i, int block) { return MultiPoly::var(2 * nv, i + block * nv); };
    if (m.kind == CurveKind::X4) {
        MultiPoly A = v(1, 0) * v(2, 0) + v(1, 0) * v(2, 1) + v(1, 1) * v(2, 0);
        // 1/(y7 y8)_1 = 1/(k2 k3)_1
        return CurveFraction(m, A * Rat(1, 3), {1, 1, 0, 0, 0, 0, 1});
    }
    if (m.kind == CurveKind::X12) {
        MultiPoly A = v(1, 0) * v(4, 0) + v(1, 1) * v(4, 0) + v(1, 0) * v(4, 1) +
                      v(2, 1) * v(3, 0) + v(2, 0) * v(3, 1) + v(2, 1) * v(3, 1);
        // 1/(y13 y16)_1 = y13_1/(k2 k3 kh2)_1
        return CurveFraction(m, A * v(1, 0) * Rat(1, 6), {1, 1, 1, 0, 0, 0, 1});
    }
    throw std::runtime_error("sigma kernel only for x4/x12");
}

// Numeric kernel value: coefficient of dx_P of Sigma(P, Q).
inline cplx sigma_kernel(const CurveModel& m, const CurveFraction& sig, const CurvePoint& P,
                         const CurvePoint& Q) {
    if (std::abs(P.x - Q.x) < 1e-12) {
        auto cp = coords(m, P), cq = coords(m, Q);
        double d = 0;
        for (int i = 1; i < m.nv; ++i) d = std::max(d, std::abs(cp[i] - cq[i]));
        if (d < 1e-9) throw std::runtime_error("PoleAtDiagonal");
    }
    return sig.eval(P, Q);
}

// d_Q Sigma(P,Q) - d_P Sigma(Q,P), the antisymmetrized derivative (coefficient
// of dx_1 (x) dx_2 with P = point 1, Q = point 2).
inline CurveFraction antisym_dsigma(const CurveModel& m, const CurveFraction& sig) {
    return sig.d_along(1) - sig.swapped().d_along(0);
}

// Sum over i of nuI_i(block a) * nuII_i(block b).
inline CurveFraction pairing_sum(const CurveModel& m, const std::vector<OneForm>& nuI,
                                 const std::vector<OneForm>& nuII, int a, int b) {
    CurveFraction s(m);
    for (size_t i = 0; i < nuI.size(); ++i)
        s = s + as_fraction(m, nuI[i], a) * as_fraction(m, nuII[i], b);
    return s;
}

// Exact check of the antisymmetric pairing identity:
//   d_Q Sigma(P,Q) - d_P Sigma(Q,P) = sum_i (nuI_i(Q) nuII_i(P) - nuI_i(P) nuII_i(Q)).
inline bool pairing_identity_holds(const CurveModel& m, const std::vector<OneForm>& nuI,
                                   const std::vector<OneForm>& nuII) {
    CurveFraction lhs = antisym_dsigma(m, sigma_fraction(m));
    CurveFraction rhs =
        pairing_sum(m, nuI, nuII, 1, 0) - pairing_sum(m, nuI, nuII, 0, 1);
    return (lhs - rhs).is_zero();
}

// ---------------------------------------------------------------------------
// Second-kind bases
// ---------------------------------------------------------------------------

namespace detail {
// Coefficient of x^(deg-j) of a monic univariate-in-x model polynomial.
inline Rat kcoef(const CurveModel& m, const MultiPoly& k, int j) {
    int d = k.degree_in(0);
    for (auto& [e, c] : k.terms)
        if (e[0] == d - j) return c;
    return 0;
}
}  // namespace detail

// Transcribed second-kind display for X4 (lam3_j / lam2_j are the
// coefficients of k3 and k2).
inline std::vector<OneForm> second_kind_x4_printed(const CurveModel& m) {
    Rat l31 = detail::kcoef(m, m.k3, 1), l32 = detail::kcoef(m, m.k3, 2),
        l33 = detail::kcoef(m, m.k3, 3);
    Rat l21 = detail::kcoef(m, m.k2, 1), l22 = detail::kcoef(m, m.k2, 2);
    auto make = [&](std::vector<Rat> coef_lo_to_hi, int yvar) {
        OneForm f;
        f.num = -m.xpoly(coef_lo_to_hi);
        f.yden = std::vector<int>(m.nv, 0);
        f.yden[yvar] = 1;
        f.nfac = 3;
        return f;
    };
    std::vector<OneForm> out;
    out.push_back(make({l22 * l31, l32 + 2 * l21 * l31 + 3 * l22, 3 * l31 + 4 * l21, 5}, 1));
    out.push_back(make({l33, 2 * l32 + l21 * l31, 3 * l31 + 2 * l21, 4}, 2));
    out.push_back(make({0, l21, 2}, 1));
    out.push_back(make({0, 0, 1}, 2));
    return out;
}

// Sign-corrected X4 reference: the pairing identity as stated here fixes the
// opposite overall sign from the display (both curves are affected the same
// way, so the display is internally consistent; only the orientation of the
// identity differs).
inline std::vector<OneForm> second_kind_x4_reference(const CurveModel& m) {
    auto out = second_kind_x4_printed(m);
    for (auto& f : out) f.num = -f.num;
    return out;
}

// Transcribed second-kind display for X12 (used as reference and to pin the
// free directions of the solved basis).
inline std::vector<OneForm> second_kind_x12_printed(const CurveModel& m) {
    Rat A1 = detail::kcoef(m, m.k3, 1), A2 = detail::kcoef(m, m.k3, 2),
        A3 = detail::kcoef(m, m.k3, 3);
    Rat B1 = detail::kcoef(m, m.k2, 1), B2 = detail::kcoef(m, m.k2, 2);
    Rat C1 = detail::kcoef(m, m.k2h, 1), C2 = detail::kcoef(m, m.k2h, 2);
    auto make = [&](std::vector<Rat> coef_lo_to_hi, std::vector<int> yden, bool positive = false) {
        OneForm f;
        f.num = m.xpoly(coef_lo_to_hi);
        if (!positive) f.num = -f.num;
        f.yden = yden;
        f.nfac = 6;
        return f;
    };
    std::vector<int> y13 = {0, 1, 0, 0, 0}, y14 = {0, 0, 1, 0, 0}, y15 = {0, 0, 0, 1, 0},
                     y16 = {0, 0, 0, 0, 1}, y1316 = {0, 1, 0, 0, 1};
    std::vector<OneForm> out;
    out.push_back(make({3 * A2 * B1 * C2 + 4 * A1 * B2 * C2 + 2 * A2 * B2 * C1 +
                            A3 * B1 * C1 + 2 * A3 * C2,
                        4 * A3 * B1 + 5 * A2 * B2 + 5 * A3 * C1 + 7 * A2 * C2 + 9 * B2 * C2 +
                            6 * A2 * B1 * C1 + 8 * A1 * B1 * C2 + 7 * A1 * B2 * C1,
                        10 * A1 * B2 + 9 * A2 * B1 + 10 * A2 * C1 + 12 * B2 * C1 +
                            12 * A1 * C2 + 13 * B1 * C2 + 8 * A3 + 11 * A1 * B1 * C1,
                        14 * A1 * B1 + 15 * A1 * C1 + 16 * B1 * C1 + 13 * A2 + 15 * B2 + 17 * C2,
                        19 * B1 + 18 * A1 + 20 * C1, 23},
                       y13));
    out.push_back(make({A1 * B2 * C1 + 2 * A1 * B1 * C2 + 3 * B2 * C2 + A2 * C2,
                        7 * B1 * C2 + 6 * A1 * C2 + 4 * A1 * B2 + 6 * B2 * C1 + 4 * A2 * C1 +
                            3 * A2 * B1 + 2 * A3 + 5 * A1 * B1 * C1,
                        10 * B1 * C1 + 9 * A1 * C1 + 8 * A1 * B1 + 11 * C2 + 9 * B2 + 7 * A2,
                        13 * B1 + 12 * A1 + 14 * C1, 17},
                       y13));
    out.push_back(make({-3 * A2 * B1 + B1 * C2,
                        4 * B1 * C1 + 3 * A1 * C1 + 2 * A1 * B1 + A2 + 3 * B2 + 5 * C2,
                        6 * A1 + 7 * B1 + 8 * C1, 11},
                       y13, /*positive=*/true));
    out.push_back(make({2 * A3, 2 * A1 * B1 + 4 * A2, 4 * B1 + 6 * A1, 8}, y14));
    out.push_back(make({0, 3 * A1 * C1 + 3 * C2 + 3 * A2, 6 * C1 + 6 * A1, 9}, y15));
    out.push_back(make({2 * A1 * B2, 4 * A1 * B1 + 2 * A2 + 6 * B2, 8 * B1 + 6 * A1, 10}, y16));
    out.push_back(make({-2 * A3 * B1 - A2 * B2 - A3 * C1,
                        0,
                        A1 * B1 * C1 + 2 * A2 * C1 + 3 * A2 * B1 + 2 * A1 * B2 + 4 * A3,
                        3 * B2 + 3 * A1 * C1 - C2 + 5 * A2 + 2 * B1 * C1 + 4 * A1 * B1,
                        6 * A1 + 5 * B1 + 4 * C1, 7},
                       y1316));
    out.push_back(make({0, 2 * C1 + B1, 5}, y13));
    out.push_back(make({0, 0, 2}, y14));
    out.push_back(make({0, 0, 3}, y15));
    out.push_back(make({0, 2 * B1, 4}, y16));
    out.push_back(make({0, 0, 0, 0, 1}, y1316));
    return out;
}

// Sign-corrected reference: re-deriving the basis from the pairing identity
// shows the overall minus signs of the display are spurious -- the one form
// printed *without* a minus (the third) is the only one whose sign is
// consistent with the identity, and the genus-4 convention.  Negating the
// others gives the reference the solve is pinned against.
inline std::vector<OneForm> second_kind_x12_reference(const CurveModel& m) {
    auto out = second_kind_x12_printed(m);
    for (int i = 0; i < 12; ++i)
        if (i != 2) out[i].num = -out[i].num;
    return out;
}

// Result of re-deriving the second-kind basis by an exact linear solve of the
// pairing identity.
struct SecondKindSolve {
    std::vector<OneForm> forms;
    std::vector<OneForm> printed;
    std::vector<OneForm> reference;
    // (form index, x-degree, solved coefficient, reference coefficient)
    std::vector<std::tuple<int, int, Rat, Rat>> diffs;
    int unknowns = 0, rank = 0, nfree = 0;
};

// Solve for the second-kind basis from the pairing identity, using the shapes
// of the displayed forms as the ansatz.  The identity determines the basis
// only modulo symmetric first-kind admixtures; those free directions are
// pinned to the reference coefficients.
inline SecondKindSolve second_kind_solved(const CurveModel& m) {
    SecondKindSolve R;
    bool g12 = (m.kind == CurveKind::X12);
    R.printed = g12 ? second_kind_x12_printed(m) : second_kind_x4_printed(m);
    R.reference = g12 ? second_kind_x12_reference(m) : second_kind_x4_reference(m);
    auto nuI = holomorphic_basis(m);
    int nf = (int)nuI.size();

    // Ansatz shapes: (max x-degree, y-denominator) per form, matching the display.
    struct Shape { int deg; std::vector<int> yden; };
    std::vector<Shape> shapes;
    for (auto& f : R.printed) shapes.push_back({0, f.yden});
    {
        std::vector<int> degs = g12 ? std::vector<int>{5, 4, 3, 3, 3, 3, 5, 2, 2, 2, 2, 4}
                                    : std::vector<int>{3, 3, 2, 2};
        for (int i = 0; i < nf; ++i) shapes[i].deg = degs[i];
    }

    // Unknown index layout.
    std::vector<std::pair<int, int>> unk;  // (form, x-degree)
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j <= shapes[i].deg; ++j) unk.push_back({i, j});
    int NU = (int)unk.size();
    R.unknowns = NU;

    CurveFraction lhs = antisym_dsigma(m, sigma_fraction(m));

    // RHS coefficient fraction for each unknown: the identity is linear in the
    // ansatz coefficients c_k, RHS = sum_k c_k * basisfrac_k.
    auto unit_form = [&](int i, int j) {
        OneForm f;
        f.num = MultiPoly::var(m.nv, 0, j);
        f.yden = shapes[i].yden;
        f.nfac = m.cover_n;
        return f;
    };
    std::vector<CurveFraction> basisfrac;
    for (auto& [i, j] : unk) {
        OneForm f = unit_form(i, j);
        CurveFraction t = as_fraction(m, nuI[i], 1) * as_fraction(m, f, 0) -
                          as_fraction(m, nuI[i], 0) * as_fraction(m, f, 1);
        basisfrac.push_back(t);
    }

    // Common denominator and linear system over the monomial support.
    std::array<int, 7> target = lhs.den;
    for (auto& t : basisfrac)
        for (int i = 0; i < 7; ++i) target[i] = std::max(target[i], t.den[i]);
    CurveFraction L = lhs.with_den(target);
    std::vector<MultiPoly> cols;
    for (auto& t : basisfrac) cols.push_back(t.with_den(target).num);

    std::map<std::vector<int>, int> rowidx;
    auto touch = [&](const MultiPoly& p) {
        for (auto& [e, c] : p.terms)
            if (!rowidx.count(e)) { int k = (int)rowidx.size(); rowidx[e] = k; }
    };
    touch(L.num);
    for (auto& c : cols) touch(c);
    int NR = (int)rowidx.size();
    std::vector<std::vector<Rat>> M(NR, std::vector<Rat>(NU + 1, 0));
    for (int k = 0; k < NU; ++k)
        for (auto& [e, c] : cols[k].terms) M[rowidx[e]][k] = c;
    for (auto& [e, c] : L.num.terms) M[rowidx[e]][NU] = c;

    // Exact Gauss-Jordan elimination.
    std::vector<int> pivot_of_col(NU, -1);
    int prow = 0;
    for (int col = 0; col < NU && prow < NR; ++col) {
        int sel = -1;
        for (int r = prow; r < NR; ++r)
            if (M[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(M[sel], M[prow]);
        Rat inv = M[prow][col];
        for (int c = col; c <= NU; ++c) M[prow][c] /= inv;
        for (int r = 0; r < NR; ++r) {
            if (r == prow || M[r][col] == 0) continue;
            Rat f = M[r][col];
            for (int c = col; c <= NU; ++c) M[r][c] -= f * M[prow][c];
        }
        pivot_of_col[col] = prow;
        ++prow;
    }
    R.rank = prow;
    for (int r = prow; r < NR; ++r)
        if (M[r][NU] != 0) throw std::runtime_error("second-kind ansatz inconsistent");

    // Reference coefficient for unknown (i, j): the signed x^j coefficient of
    // the sign-corrected reference numerator.
    auto ref_coef = [&](int i, int j) -> Rat {
        for (auto& [e, c] : R.reference[i].num.terms) {
            bool xonly = true;
            for (int v = 1; v < m.nv; ++v)
                if (e[v] != 0) xonly = false;
            if (xonly && e[0] == j) return c;
        }
        return 0;
    };

    // Assign free columns their reference values; back out pivot columns.
    std::vector<Rat> c(NU, 0);
    for (int k = 0; k < NU; ++k)
        if (pivot_of_col[k] < 0) { c[k] = ref_coef(unk[k].first, unk[k].second); ++R.nfree; }
    for (int k = 0; k < NU; ++k) {
        if (pivot_of_col[k] < 0) continue;
        int r = pivot_of_col[k];
        Rat v = M[r][NU];
        for (int q = 0; q < NU; ++q)
            if (q != k && pivot_of_col[q] < 0) v -= M[r][q] * c[q];
        c[k] = v;
    }

    // Build forms and record disagreements with the reference display.
    for (int i = 0; i < nf; ++i) {
        OneForm f;
        f.num = MultiPoly(m.nv);
        f.yden = shapes[i].yden;
        f.nfac = m.cover_n;
        R.forms.push_back(f);
    }
    for (int k = 0; k < NU; ++k) {
        auto [i, j] = unk[k];
        std::vector<int> e(m.nv, 0);
        e[0] = j;
        R.forms[i].num.add_term(e, c[k]);
        if (c[k] != ref_coef(i, j)) R.diffs.push_back({i, j, c[k], ref_coef(i, j)});
    }
    return R;
}

inline std::vector<OneForm> second_kind_basis(const CurveModel& m) {
    if (m.kind == CurveKind::X4 || m.kind == CurveKind::X12)
        return second_kind_solved(m).forms;
    throw std::runtime_error("second kind basis only for x4/x12");
}

// ---------------------------------------------------------------------------
// The fundamental two-form
// ---------------------------------------------------------------------------

struct FundamentalForm {
    CurveFraction omega;  // coefficient of dx1 (x) dx2
    MultiPoly F;          // numerator polynomial in R (x) R
    std::array<int, 7> fden{};  // always {0,..,0} after reduction

    cplx eval(const CurvePoint& p1, const CurvePoint& p2) const { return omega.eval(p1, p2); }
};

inline FundamentalForm fundamental_form(const CurveModel& m, const std::vector<OneForm>& nuI,
                                        const std::vector<OneForm>& nuII) {
    FundamentalForm R;
    CurveFraction sig = sigma_fraction(m);
    R.omega = sig.d_along(1) + pairing_sum(m, nuI, nuII, 0, 1);
    // F := Omega * (x1-x2)^2 * (n y_top)_1 (n y_top)_2.
    int nv = m.nv;
    MultiPoly T = MultiPoly::var(2 * nv, 0) - MultiPoly::var(2 * nv, nv);
    MultiPoly ytop(2 * nv);
    if (m.kind == CurveKind::X4) {
        std::vector<int> e(2 * nv, 0);
        e[1] = e[2] = e[nv + 1] = e[nv + 2] = 1;  // y7 y8 at both points
        ytop.terms[e] = 9;
    } else {
        std::vector<int> e(2 * nv, 0);
        e[1] = e[4] = e[nv + 1] = e[nv + 4] = 1;  // y13 y16 at both points
        ytop.terms[e] = 36;
    }
    CurveFraction f = (R.omega * (T * T * ytop)).reduced();
    R.F = f.num;
    R.fden = f.den;
    return R;
}

// Exact limit of F(P1, P2) / (phi_top(P1) (x1-x2)^2) as P1 -> infinity: the
// coefficient (a polynomial in the second point) of the top-weight block-1
// monomial of F, namely x^3 y8 (X4) or x^3 y16 (X12), matching
// phi_top * x^2 = x^3 y8 resp. x^3 y16.
inline MultiPoly limit_at_infinity(const CurveModel& m, const MultiPoly& F) {
    int nv = m.nv;
    std::vector<int> top(nv, 0);
    if (m.kind == CurveKind::X4) { top[0] = 3; top[2] = 1; }
    else { top[0] = 3; top[4] = 1; }
    MultiPoly out(nv);
    long long best = -1;
    // Find the maximal block-1 weight present, to confirm it is the expected one.
    for (auto& [e, c] : F.terms) {
        long long w = 0;
        for (int i = 0; i < nv; ++i) w += (long long)e[i] * m.var_weights[i];
        best = std::max(best, w);
    }
    long long topw = 0;
    for (int i = 0; i < nv; ++i) topw += (long long)top[i] * m.var_weights[i];
    if (best != topw) throw std::runtime_error("unexpected top weight in F");
    for (auto& [e, c] : F.terms) {
        bool match = true;
        for (int i = 0; i < nv; ++i)
            if (e[i] != top[i]) { match = false; break; }
        if (!match) continue;
        std::vector<int> e2(nv);
        for (int i = 0; i < nv; ++i) e2[i] = e[nv + i];
        out.add_term(e2, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric contours
// ---------------------------------------------------------------------------

// Continue a point to a new x, choosing the nearest branch of each root.
inline CurvePoint continue_point(const CurveModel& m, const CurvePoint& prev, cplx xnew) {
    int n = m.cover_n;
    cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi / n);
    auto kv = [&](const MultiPoly& k) { return k.eval(std::vector<cplx>(m.nv, xnew)); };
    auto pick = [&](cplx base, cplx prevw) {
        cplx bestw = base;
        double bestd = std::abs(base - prevw);
        cplx w = base;
        for (int j = 1; j < n; ++j) {
            w *= zeta;
            double d = std::abs(w - prevw);
            if (d < bestd) { bestd = d; bestw = w; }
        }
        return bestw;
    };
    CurvePoint q;
    q.x = xnew;
    q.w2 = pick(nth_root(kv(m.k2), n), prev.w2);
    q.w3 = pick(nth_root(kv(m.k3), n), prev.w3);
    q.w2h = m.kind == CurveKind::X12 ? pick(nth_root(kv(m.k2h), n), prev.w2h) : cplx(1.0);
    return q;
}

// Residue at P0 of the one-form f(P) dx given by an evaluator, via a 32-point
// trapezoidal contour in the x-plane with sheet tracking.
template <class Eval>
inline cplx residue_contour(const CurveModel& m, const Eval& f, const CurvePoint& P0,
                            double radius = 1e-2, int N = 32) {
    cplx s = 0;
    CurvePoint cur = P0;
    for (int j = 0; j < N; ++j) {
        double th = 2.0 * std::numbers::pi * j / N;
        cplx x = P0.x + std::polar(radius, th);
        cur = continue_point(m, cur, x);
        s += f(cur) * (x - P0.x);
    }
    return s / (double)N;
}

// Residue of a one-form at infinity.  Infinity is a single totally ramified
// point (x = 1/t^n), so a small positively oriented loop around it in t maps
// to n clockwise loops in the x-plane at large radius.
template <class Eval>
inline cplx residue_at_infinity(const CurveModel& m, const Eval& f, double R = 40.0,
                                int N = 128) {
    int n = m.cover_n;
    cplx s = 0;
    CurvePoint cur = point_above(m, R, 0, 0, 0);
    for (int j = 1; j <= n * N; ++j) {
        double th = -2.0 * std::numbers::pi * j / N;  // clockwise
        cplx x = std::polar(R, th);
        cur = continue_point(m, cur, x);
        s += f(cur) * x;
    }
    // dtheta = -2 pi / N and residue = (1/2 pi) * sum f * x * dtheta.
    return -s / (double)N;
}

}  // namespace kln
