#pragma once
#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace kln {

struct NumericalSemigroup {
    std::vector<long long> generators;  // minimal generating set, sorted
    std::vector<long long> gaps;        // sorted complement of the semigroup in N0
    long long genus = 0;                // |gaps|
};

// Gap set via the Apery set of the smallest generator: for each residue r mod a,
// find the least semigroup element w_r in that class by shortest-path relaxation;
// n is a gap iff n < w_{n mod a}.
inline std::vector<long long> semigroup_gaps(const std::vector<long long>& gens) {
    if (gens.empty()) throw std::invalid_argument("no generators");
    for (auto g : gens)
        if (g <= 0) throw std::invalid_argument("generators must be positive");
    long long d = 0;
    for (auto g : gens) d = std::gcd(d, g);
    if (d != 1) throw std::runtime_error("InfiniteComplement: gcd of generators is not 1");
    long long a = *std::min_element(gens.begin(), gens.end());
    const long long INF = LLONG_MAX / 4;
    std::vector<long long> w(a, INF);
    w[0] = 0;
    // Relax until stable (Bellman-Ford over the cyclic graph of residues).
    bool changed = true;
    while (changed) {
        changed = false;
        for (long long r = 0; r < a; ++r) {
            if (w[r] == INF) continue;
            for (auto g : gens) {
                long long v = w[r] + g;
                long long s = v % a;
                if (v < w[s]) {
                    w[s] = v;
                    changed = true;
                }
            }
        }
    }
    std::vector<long long> gaps;
    for (long long r = 1; r < a; ++r)
        for (long long n = r; n < w[r]; n += a) gaps.push_back(n);
    std::sort(gaps.begin(), gaps.end());
    return gaps;
}

inline bool semigroup_member(const NumericalSemigroup& s, long long n) {
    if (n < 0) return false;
    return !std::binary_search(s.gaps.begin(), s.gaps.end(), n);
}

// Extract the minimal generating set: elements of the semigroup that are not
// sums of two smaller positive elements.
inline std::vector<long long> minimal_generators(const std::vector<long long>& gaps,
                                                 const std::vector<long long>& raw_gens) {
    long long lim = 1;
    if (!gaps.empty()) lim = gaps.back() + 1;
    for (auto g : raw_gens) lim = std::max(lim, g + 1);
    lim = 2 * lim + 2;
    std::vector<char> in(lim, 1);
    for (auto g : gaps)
        if (g < lim) in[g] = 0;
    std::vector<long long> elems;
    for (long long n = 1; n < lim; ++n)
        if (in[n]) elems.push_back(n);
    std::vector<long long> mins;
    for (auto n : elems) {
        bool decomposable = false;
        for (auto m : elems) {
            if (m >= n) break;
            if (n - m >= 1 && n - m < lim && in[n - m]) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) mins.push_back(n);
    }
    return mins;
}

inline NumericalSemigroup make_semigroup(const std::vector<long long>& gens) {
    NumericalSemigroup s;
    s.gaps = semigroup_gaps(gens);
    s.generators = minimal_generators(s.gaps, gens);
    s.genus = (long long)s.gaps.size();
    return s;
}

struct GapProfile {
    std::vector<long long> alpha;  // alpha_i = ell_i - i - 1, 0-based gap list
    long long weight = 0;          // sum of alpha
    std::vector<long long> young;  // partition, non-increasing
    long long alpha_min = 0;       // smallest positive generator
};

inline std::vector<long long> young_diagram(const NumericalSemigroup& s) {
    // Row i (1-based) of the Young diagram of the gap sequence:
    // Lambda_i = ell_{g-i} - (g-i), with ell 0-based sorted gaps.
    long long g = s.genus;
    std::vector<long long> part;
    for (long long i = 1; i <= g; ++i) part.push_back(s.gaps[g - i] - (g - i));
    return part;
}

inline GapProfile profile(const NumericalSemigroup& s) {
    GapProfile p;
    for (long long i = 0; i < s.genus; ++i) p.alpha.push_back(s.gaps[i] - i - 1);
    p.weight = std::accumulate(p.alpha.begin(), p.alpha.end(), 0LL);
    p.young = young_diagram(s);
    p.alpha_min = s.generators.empty() ? 1 : s.generators.front();
    return p;
}

inline bool is_symmetric(const NumericalSemigroup& s) {
    return std::binary_search(s.gaps.begin(), s.gaps.end(), 2 * s.genus - 1);
}

struct BuchweitzResult {
    long long count = 0;  // |L2|, L2 = all pairwise sums of gaps
    long long bound = 0;  // 3g - 3
    bool obstructed = false;
};

inline BuchweitzResult buchweitz_l2(const NumericalSemigroup& s) {
    std::set<long long> l2;
    for (auto a : s.gaps)
        for (auto b : s.gaps) l2.insert(a + b);
    BuchweitzResult r;
    r.count = (long long)l2.size();
    r.bound = 3 * s.genus - 3;
    r.obstructed = r.count > r.bound;
    return r;
}

}  // namespace kln
