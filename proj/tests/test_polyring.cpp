#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinian/curve.hpp"
#include "kleinian/curve_extras.hpp"

using namespace kln;

static cplx eval_termwise(const MultiPoly& p, const std::vector<cplx>& pt) {
    // independent oracle: plain term-by-term powers
    cplx s = 0;
    for (auto& [e, c] : p.terms) {
        cplx t(to_double(c), 0.0);
        for (size_t i = 0; i < e.size(); ++i) t *= std::pow(pt[i], (double)e[i]);
        s += t;
    }
    return s;
}

TEST_CASE("exact polynomial arithmetic is ring-homomorphic under evaluation") {
    Rng rng(12345);
    auto m = build_x4();
    MultiPoly p = m.var(1, 2) * m.cst(Rat(3, 7)) + m.var(0, 3) - m.var(2) * m.var(0);
    MultiPoly q = m.k2 + m.var(1) * m.var(2);
    for (int it = 0; it < 20; ++it) {
        std::vector<cplx> pt;
        for (int i = 0; i < 3; ++i) pt.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
        cplx lhs = (p * q).eval(pt);
        cplx rhs = p.eval(pt) * q.eval(pt);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
        CHECK(std::abs(p.eval(pt) - eval_termwise(p, pt)) < 1e-12 * (1.0 + std::abs(p.eval(pt))));
    }
}

TEST_CASE("normal forms reduce to the monomial basis and are idempotent") {
    auto m = build_x4();
    MultiPoly y7 = m.var(1), y8 = m.var(2);
    CHECK(normal_form(y7 * y7, m) == y8 * m.k2);
    CHECK(normal_form(y7 * y8, m) == m.k2 * m.k3);
    CHECK(normal_form(y8 * y8, m) == y7 * m.k3);

    auto m12 = build_x12();
    MultiPoly y16 = m12.var(4), y14 = m12.var(2);
    CHECK(normal_form(y16 * y16, m12) == m12.k3 * y14);

    // idempotence + confluence: reduce random products two ways
    Rng rng(99);
    for (int it = 0; it < 10; ++it) {
        MultiPoly a = m12.var(1, rng.integer(0, 2)) * m12.var(3, rng.integer(0, 2)) *
                      m12.var(0, rng.integer(0, 2));
        MultiPoly b = m12.var(2, rng.integer(0, 2)) * m12.var(4, rng.integer(0, 2));
        MultiPoly n1 = normal_form(a * b, m12);
        MultiPoly n2 = normal_form(normal_form(a, m12) * normal_form(b, m12), m12);
        CHECK(n1 == n2);
        CHECK(normal_form(n1, m12) == n1);
    }
}

TEST_CASE("normal form agrees with evaluation on the curve") {
    auto m = build_x4();
    Rng rng(7);
    MultiPoly p = m.var(1, 3) * m.var(2, 2) + m.var(0) * m.var(1) * m.var(2) - m.cst(5);
    MultiPoly n = normal_form(p, m);
    for (int it = 0; it < 10; ++it) {
        auto pt = random_point(m, rng);
        auto c = coords(m, pt);
        cplx a = p.eval(c), b = n.eval(c);
        CHECK(std::abs(a - b) < 1e-7 * (1.0 + std::abs(a)));
    }
    auto m12 = build_x12();
    MultiPoly q = m12.var(1, 2) * m12.var(3) * m12.var(4, 2) + m12.var(2, 3);
    MultiPoly nq = normal_form(q, m12);
    for (int it = 0; it < 10; ++it) {
        auto pt = random_point(m12, rng);
        auto c = coords(m12, pt);
        cplx a = q.eval(c), b = nq.eval(c);
        CHECK(std::abs(a - b) < 1e-7 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("weights (pole orders at infinity)") {
    auto m4 = build_x4();
    CHECK(weight_of(m4, {{"y7", 1}, {"y8", 1}}) == 15);
    CHECK(weight_of(m4, {{"x", 1}}) == 3);
    auto m12 = build_x12();
    CHECK(weight_of(m12, {{"x", 1}}) == 6);
    CHECK(weight_of(m12, {{"w3", 2}, {"w2", 2}}) == 10);
    CHECK(weight_of(m12, {{"w3", 3}, {"w2", 2}, {"w2h", 3}}) == 19);
    CHECK(weight_of(m12, {{"y13", 1}, {"y16", 1}}) == 29);
    CHECK(10 + 19 == 29);  // the two factor weights sum to wt(y13 y16)

    // every basis monomial has the weight of its pole-order slot
    for (auto& [e, w] : m4.phi) {
        long long s = 0;
        for (int i = 0; i < m4.nv; ++i) s += e[i] * m4.var_weights[i];
        CHECK(s == w);
    }
    for (auto& [e, w] : m12.phi) {
        long long s = 0;
        for (int i = 0; i < m12.nv; ++i) s += e[i] * m12.var_weights[i];
        CHECK(s == w);
    }
}

TEST_CASE("defining relations vanish at sampled points") {
    Rng rng(2024);
    for (auto& m : {build_x4(), build_x12(), build_x6(), build_x7()}) {
        for (int it = 0; it < 10; ++it) {
            auto p = random_point(m, rng);
            CHECK(relation_residual(m, p) < 1e-12);
        }
    }
}

TEST_CASE("degenerate moduli are rejected") {
    CHECK_THROWS(build_x4({1, 1, 2, 3, 4}));
    CHECK_THROWS(build_x4({0, 1, 2, 3, 4}));
    CHECK_THROWS(build_x12({1, 2, 3, 4, 5, 6, 6}));
}
