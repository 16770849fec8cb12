#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kleinian/semigroup.hpp"

using namespace kln;

// Independent oracle: brute-force sieve of representable numbers.
static std::vector<long long> sieve_gaps(const std::vector<long long>& gens, long long limit) {
    std::vector<char> in(limit + 1, 0);
    in[0] = 1;
    for (long long n = 1; n <= limit; ++n)
        for (auto g : gens)
            if (n >= g && in[n - g]) { in[n] = 1; break; }
    std::vector<long long> gaps;
    for (long long n = 1; n <= limit; ++n)
        if (!in[n]) gaps.push_back(n);
    return gaps;
}

TEST_CASE("gap sequences of the named semigroups") {
    auto h4 = make_semigroup({3, 7, 8});
    CHECK(h4.gaps == std::vector<long long>{1, 2, 4, 5});
    CHECK(h4.genus == 4);
    CHECK(h4.generators == std::vector<long long>{3, 7, 8});

    auto h12 = make_semigroup({6, 13, 14, 15, 16});
    CHECK(h12.gaps == std::vector<long long>{1, 2, 3, 4, 5, 7, 8, 9, 10, 11, 17, 23});
    CHECK(h12.genus == 12);

    auto trivial = make_semigroup({1});
    CHECK(trivial.gaps.empty());
    CHECK(trivial.genus == 0);

    CHECK_THROWS(make_semigroup({4, 6}));  // gcd 2: infinite complement
}

TEST_CASE("gap computation agrees with the sieve oracle") {
    std::vector<std::vector<long long>> cases = {
        {3, 7, 8}, {6, 13, 14, 15, 16}, {3, 7}, {3, 8}, {2, 5}, {5, 7, 9}, {4, 9, 11},
        {13, 14, 15, 16, 17, 18, 20, 22, 23}};
    for (auto& gens : cases) {
        auto s = make_semigroup(gens);
        long long lim = 4 * (s.gaps.empty() ? 1 : s.gaps.back());
        CHECK(s.gaps == sieve_gaps(gens, lim));
        // gaps and members partition N0 disjointly
        for (long long n = 0; n <= lim; ++n) {
            bool g = std::binary_search(s.gaps.begin(), s.gaps.end(), n);
            CHECK(g != semigroup_member(s, n));
        }
    }
}

TEST_CASE("alpha profiles, weights and Young diagrams") {
    auto h4 = make_semigroup({3, 7, 8});
    auto p4 = profile(h4);
    CHECK(p4.alpha == std::vector<long long>{0, 0, 1, 1});
    CHECK(p4.weight == 2);
    CHECK(p4.young == std::vector<long long>{2, 2, 1, 1});
    CHECK(p4.alpha_min == 3);

    auto h12 = make_semigroup({6, 13, 14, 15, 16});
    auto p12 = profile(h12);
    CHECK(p12.alpha == std::vector<long long>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 6, 11});
    CHECK(p12.young == std::vector<long long>{12, 7, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1});

    CHECK(young_diagram(make_semigroup({3, 7})) == std::vector<long long>{6, 4, 2, 2, 1, 1});
    CHECK(young_diagram(make_semigroup({3, 8})) == std::vector<long long>{7, 5, 3, 2, 2, 1, 1});

    // weight recomputed independently from the raw gap list
    for (auto& s : {h4, h12}) {
        long long w = 0;
        for (long long i = 0; i < s.genus; ++i) w += s.gaps[i] - i - 1;
        CHECK(profile(s).weight == w);
    }
}

TEST_CASE("Young diagram rows vs alpha entries and pole-order differences") {
    // Row i of the diagram equals alpha_{g-i} + 1 = ell_{g-i} - (g-i).
    for (auto& gens : std::vector<std::vector<long long>>{
             {3, 7, 8}, {3, 7}, {3, 8}, {6, 13, 14, 15, 16}}) {
        auto s = make_semigroup(gens);
        auto p = profile(s);
        for (long long i = 1; i <= s.genus; ++i)
            CHECK(p.young[i - 1] == p.alpha[s.genus - i] + 1);
    }
    // Equivalent presentation via the non-gap counting function N(n) = n-th
    // non-gap: row i = N(g) - N(i-1) - g + i - 1 (holds when the canonical
    // monomial basis is the plain non-gap one, i.e. for 3-semigroups <3,7>,
    // <3,8> and for <6,13,14,15,16>).
    for (auto& gens : std::vector<std::vector<long long>>{{3, 7}, {3, 8}, {6, 13, 14, 15, 16}}) {
        auto s = make_semigroup(gens);
        std::vector<long long> N;  // N[0]=0, N[k] = k-th positive non-gap
        for (long long n = 0; (long long)N.size() <= s.genus; ++n)
            if (semigroup_member(s, n)) N.push_back(n);
        auto y = young_diagram(s);
        for (long long i = 1; i <= s.genus; ++i)
            CHECK(y[i - 1] == N[s.genus] - N[i - 1] - s.genus + i - 1);
    }
    // For <3,7,8> the same formula needs the pole orders of the second
    // monomial family {7,8,10,11,13}: N(4)-N(i-1)-5+i.
    {
        std::vector<long long> N = {7, 8, 10, 11, 13};
        std::vector<long long> expect = {2, 2, 1, 1};
        for (long long i = 1; i <= 4; ++i)
            CHECK(expect[i - 1] == N[4] - N[i - 1] - 5 + i);
    }
}

TEST_CASE("symmetry criterion") {
    CHECK_FALSE(is_symmetric(make_semigroup({3, 7, 8})));
    CHECK(is_symmetric(make_semigroup({2, 5})));
    CHECK(is_symmetric(make_semigroup({6, 13, 14, 15, 16})));  // 23 = 2*12-1 is a gap
}

TEST_CASE("pairwise gap sums and the 3g-3 bound") {
    auto hb = make_semigroup({13, 14, 15, 16, 17, 18, 20, 22, 23});
    CHECK(hb.genus == 16);
    auto rb = buchweitz_l2(hb);
    CHECK(rb.count == 46);
    CHECK(rb.bound == 45);
    CHECK(rb.obstructed);

    CHECK_FALSE(buchweitz_l2(make_semigroup({3, 7, 8})).obstructed);
    CHECK_FALSE(buchweitz_l2(make_semigroup({6, 13, 14, 15, 16})).obstructed);

    // brute-force oracle for the count
    std::set<long long> l2;
    for (auto a : hb.gaps)
        for (auto b : hb.gaps) l2.insert(a + b);
    CHECK((long long)l2.size() == rb.count);
}
