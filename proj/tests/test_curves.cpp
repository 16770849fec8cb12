#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinian/curve.hpp"
#include "kleinian/curve_extras.hpp"

using namespace kln;

TEST_CASE("defining relations match the 2x2 minor patterns exactly") {
    auto m = build_x4();
    // rows (k2, y7, y8) / (y7, y8, k3)
    MultiPoly row1[3] = {m.k2, m.var(1), m.var(2)};
    MultiPoly row2[3] = {m.var(1), m.var(2), m.k3};
    int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    MultiPoly expect[3] = {m.relations[0], m.relations[1], m.relations[2]};
    for (int k = 0; k < 3; ++k) {
        int i = pairs[k][0], j = pairs[k][1];
        MultiPoly minor = row1[i] * row2[j] - row1[j] * row2[i];
        CHECK(-minor == expect[k]);
    }

    auto w = build_x12();
    MultiPoly A = w.var(1), B = w.var(2), C = w.var(3), D = w.var(4);
    // first matrix: (k2, y14, y16) / (y14, y16, k3) gives f4, f7, f9
    {
        MultiPoly r1[3] = {w.k2, B, D};
        MultiPoly r2[3] = {B, D, w.k3};
        CHECK(-(r1[0] * r2[1] - r1[1] * r2[0]) == w.relations[3]);
        CHECK(-(r1[0] * r2[2] - r1[2] * r2[0]) == w.relations[6]);
        CHECK(-(r1[1] * r2[2] - r1[2] * r2[1]) == w.relations[8]);
    }
    // second matrix: (kh2, y13, y14 kh2, y15) / (y13, y14, y15 k2, y16)
    {
        MultiPoly r1[4] = {w.k2h, A, B * w.k2h, C};
        MultiPoly r2[4] = {A, B, C * w.k2, D};
        auto minor = [&](int i, int j) { return r1[i] * r2[j] - r1[j] * r2[i]; };
        CHECK(-minor(0, 1) == w.relations[0]);                 // f1
        CHECK(minor(0, 2) == w.k2h * (w.k2 * C - A * B));      // kh2 * (-f2)
        CHECK(minor(1, 2) == -(w.k2h * B * B - A * C * w.k2)); // -f3
        CHECK(minor(1, 3) == w.relations[4]);                  // f5
        // (2,3) minor lies in the ideal: kh2*f7 - k2*f6
        CHECK(minor(2, 3) == w.k2h * w.relations[6] - w.k2 * w.relations[5]);
        // the "missing" minor (0,3) = kh2 y16 - y13 y15 satisfies
        // y16 * (y13 y15 - kh2 y16) = y13 f8 - kh2 f9 + k3 f1
        MultiPoly missing = A * C - w.k2h * D;
        CHECK(D * missing == A * w.relations[7] - w.k2h * w.relations[8] + w.k3 * w.relations[0]);
        // and it reduces to zero in the quotient ring
        CHECK(normal_form(missing, w).is_zero());
    }
}

TEST_CASE("monomial curve ideals kill the semigroup ring map") {
    CHECK(monomial_curve_kernel_check(monomial_curve_h4(), {3, 7, 8}));
    CHECK(monomial_curve_kernel_check(monomial_curve_h12(), {6, 13, 14, 15, 16}));
    // sanity: a perturbed generator does not vanish
    auto bad = monomial_curve_h4();
    bad[0] += MultiPoly::var(3, 0);
    CHECK_FALSE(monomial_curve_kernel_check(bad, {3, 7, 8}));
}

TEST_CASE("Riemann-Hurwitz genus from cover data") {
    auto m4 = build_x4();
    CHECK(cover_genus(m4.cover_n, m4.cover_e) == 4);
    auto m12 = build_x12();
    CHECK(cover_genus(m12.cover_n, m12.cover_e) == 12);
    CHECK((long long)m4.sg.genus == 4);
    CHECK((long long)m12.sg.genus == 12);
}

TEST_CASE("phi basis enumerates exactly the non-gaps") {
    for (auto& m : {build_x4(), build_x12()}) {
        std::set<long long> ws;
        for (auto& [e, w] : m.phi) ws.insert(w);
        for (long long n = 0; n <= 2 * m.genus; ++n)
            CHECK(ws.count(n) == (semigroup_member(m.sg, n) ? 1u : 0u));
    }
}

TEST_CASE("Jacobian rank at branch points and random points") {
    Rng rng(31415);
    auto m4 = build_x4();
    for (int i = 0; i < 5; ++i)
        for (auto& p : branch_fiber(m4, i)) {
            CHECK(relation_residual(m4, p) < 1e-12);
            CHECK(jacobian_rank(m4, p) == 2);
        }
    for (int it = 0; it < 25; ++it) CHECK(jacobian_rank(m4, random_point(m4, rng)) == 2);

    auto m12 = build_x12();
    for (int i = 0; i < 7; ++i)
        for (auto& p : branch_fiber(m12, i)) {
            CHECK(relation_residual(m12, p) < 1e-12);
            CHECK(jacobian_rank(m12, p) == 4);
        }
    for (int it = 0; it < 25; ++it) CHECK(jacobian_rank(m12, random_point(m12, rng)) == 4);

    auto off = point_above(m4, cplx(0.5, 0.5), 0, 0);
    off.w3 += 0.25;  // push the point off the curve
    CHECK_THROWS(jacobian_rank(m4, off));
}

TEST_CASE("second chart ranks, including the origin") {
    auto m4 = build_x4();
    CHECK(second_chart_rank(m4, {0, 0, 0}) == 2);
    auto m12 = build_x12();
    // The 5-variable chart is singular at its origin: the coordinates vanish
    // to orders (6,5,4,3,2), none of order 1, so the tangent space there is
    // 2-dimensional and the Jacobian rank is 3 (not 4).
    CHECK(second_chart_rank(m12, {0, 0, 0, 0, 0}) == 3);
    // Adjoining z = y13 y16 / x^5 (order 1) gives a chart smooth at infinity.
    CHECK(extended_chart_rank(m12, {0, 0, 0, 0, 0, 0}) == 5);

    // chart relations vanish at transported affine points, and rank transfers
    Rng rng(777);
    auto rels4 = second_chart_relations(m4);
    for (int it = 0; it < 10; ++it) {
        auto p = random_point(m4, rng);
        auto cp = second_chart_coords(m4, p);
        for (auto& f : rels4) CHECK(std::abs(f.eval(cp)) < 1e-9);
        CHECK(second_chart_rank(m4, cp) == 2);
    }
    auto rels12 = second_chart_relations(m12);
    for (int it = 0; it < 10; ++it) {
        auto p = random_point(m12, rng);
        auto cp = second_chart_coords(m12, p);
        for (auto& f : rels12) CHECK(std::abs(f.eval(cp)) < 1e-9);
        CHECK(second_chart_rank(m12, cp) == 4);
        auto ep = extended_chart_coords(m12, p);
        for (auto& f : extended_chart_relations_x12(m12)) CHECK(std::abs(f.eval(ep)) < 1e-9);
        CHECK(extended_chart_rank(m12, ep) == 5);
    }
}

TEST_CASE("cyclic action preserves the curve and has the right order") {
    Rng rng(555);
    auto m4 = build_x4();
    for (int it = 0; it < 5; ++it) {
        auto p = random_point(m4, rng);
        auto q = cyclic_action(m4, p, 1);
        CHECK(relation_residual(m4, q) < 1e-12);
        auto y0 = y_values(m4, p), y1 = y_values(m4, q);
        cplx z3 = std::polar(1.0, 2.0 * std::numbers::pi / 3);
        CHECK(std::abs(y1[0] - z3 * y0[0]) < 1e-12);        // y7 -> zeta y7
        CHECK(std::abs(y1[1] - z3 * z3 * y0[1]) < 1e-12);   // y8 -> zeta^2 y8
        auto id = cyclic_action(m4, p, 3);
        CHECK(std::abs(y_values(m4, id)[0] - y0[0]) < 1e-12);
    }
    auto m12 = build_x12();
    for (int it = 0; it < 5; ++it) {
        auto p = random_point(m12, rng);
        auto q = cyclic_action(m12, p, 1);
        CHECK(relation_residual(m12, q) < 1e-12);
        auto y0 = y_values(m12, p), y1 = y_values(m12, q);
        cplx z6 = std::polar(1.0, 2.0 * std::numbers::pi / 6);
        for (int a = 0; a < 4; ++a)
            CHECK(std::abs(y1[a] - std::pow(z6, a + 1) * y0[a]) < 1e-11);
    }
}

TEST_CASE("projection X12 -> X4") {
    Rng rng(888);
    auto m12 = build_x12();
    auto m4 = build_x4({1, 2, 3, 4, 5});
    for (int it = 0; it < 10; ++it) {
        auto p = random_point(m12, rng);
        auto q = project_x12_to_x4(p);
        CHECK(relation_residual(m4, q) < 1e-10);
        auto y12 = y_values(m12, p), y4 = y_values(m4, q);
        CHECK(std::abs(y4[0] - y12[1]) < 1e-10);  // y7 = y14
        CHECK(std::abs(y4[1] - y12[3]) < 1e-10);  // y8 = y16
    }
    // branch point image (b1,0,...) -> (b1,0,0)
    auto bp = branch_fiber(m12, 0)[0];
    auto q = project_x12_to_x4(bp);
    CHECK(std::abs(q.x - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(y_values(m4, q)[0]) < 1e-14);
}

TEST_CASE("holomorphic numerators vanish at B4, B5") {
    // The weight-7 generator y7 vanishes on the fiber over b4 and b5.
    auto m4 = build_x4();
    for (int i = 3; i <= 4; ++i) {
        auto p = branch_fiber(m4, i)[0];
        CHECK(std::abs(y_values(m4, p)[0]) < 1e-14);
        CHECK(std::abs(y_values(m4, p)[1]) < 1e-14);
    }
}
