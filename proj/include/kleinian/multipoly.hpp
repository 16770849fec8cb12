#pragma once
#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kleinian/rational.hpp"

namespace kln {

// Exact multivariate polynomial: exponent vector -> rational coefficient.
// The variable set is positional; names live in the owning model.
struct MultiPoly {
    int nvars = 0;
    std::map<std::vector<int>, Rat> terms;  // no zero coefficients stored

    MultiPoly() = default;
    explicit MultiPoly(int nv) : nvars(nv) {}

    static MultiPoly constant(int nv, const Rat& c) {
        MultiPoly p(nv);
        if (c != 0) p.terms[std::vector<int>(nv, 0)] = c;
        return p;
    }
    static MultiPoly var(int nv, int i, int power = 1) {
        MultiPoly p(nv);
        std::vector<int> e(nv, 0);
        e[i] = power;
        p.terms[e] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const std::vector<int>& e, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(nvars);
        for (auto& [e, c] : terms) r.terms[e] = -c;
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r(nvars);
        for (auto& [e1, c1] : terms)
            for (auto& [e2, c2] : o.terms) {
                std::vector<int> e(nvars);
                for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MultiPoly operator*(const Rat& c) const {
        MultiPoly r(nvars);
        if (c == 0) return r;
        for (auto& [e, co] : terms) r.terms[e] = co * c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const { return terms == o.terms; }

    MultiPoly pow(int k) const {
        MultiPoly r = constant(nvars, 1);
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    int degree_in(int v) const {
        int d = -1;
        for (auto& [e, c] : terms) d = std::max(d, e[v]);
        return d;
    }

    MultiPoly derivative(int v) const {
        MultiPoly r(nvars);
        for (auto& [e, c] : terms) {
            if (e[v] == 0) continue;
            std::vector<int> e2 = e;
            e2[v] -= 1;
            r.add_term(e2, c * e[v]);
        }
        return r;
    }

    cplx eval(const std::vector<cplx>& pt) const {
        if ((int)pt.size() != nvars) throw std::runtime_error("UnboundVariable: wrong point arity");
        cplx s = 0.0;
        for (auto& [e, c] : terms) {
            cplx t = to_cplx(c);
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) t *= pt[i];
            s += t;
        }
        return s;
    }

    Rat eval_rat(const std::vector<Rat>& pt) const {
        Rat s = 0;
        for (auto& [e, c] : terms) {
            Rat t = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) t *= pt[i];
            s += t;
        }
        return s;
    }

    // Substitute variable v by polynomial q (over the same variable set).
    MultiPoly subst(int v, const MultiPoly& q) const {
        MultiPoly r(nvars);
        for (auto& [e, c] : terms) {
            std::vector<int> e2 = e;
            int k = e2[v];
            e2[v] = 0;
            MultiPoly t(nvars);
            t.terms[e2] = c;
            for (int i = 0; i < k; ++i) t = t * q;
            r += t;
        }
        return r;
    }

    // Map this polynomial into a larger variable set: old var i -> new var map[i].
    MultiPoly relabel(int new_nvars, const std::vector<int>& map_idx) const {
        MultiPoly r(new_nvars);
        for (auto& [e, c] : terms) {
            std::vector<int> e2(new_nvars, 0);
            for (int i = 0; i < nvars; ++i) e2[map_idx[i]] = e[i];
            r.terms[e2] = c;
        }
        return r;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [e, c] : terms) {
            std::string t;
            if (c != 1 || std::all_of(e.begin(), e.end(), [](int x) { return x == 0; }))
                t = rat_str(c);
            for (int i = 0; i < nvars; ++i) {
                if (e[i] == 0) continue;
                if (!t.empty()) t += "*";
                t += names[i];
                if (e[i] > 1) t += "^" + std::to_string(e[i]);
            }
            if (!first) s += " + ";
            s += t;
            first = false;
        }
        return s;
    }
};

// Exact division by a divisor that is monic in variable v (treating all other
// variables as coefficients). Returns true and sets quotient iff the division
// is exact.
inline bool divide_exact(const MultiPoly& num, const MultiPoly& den, int v, MultiPoly* quot) {
    int dd = den.degree_in(v);
    if (dd < 0) throw std::runtime_error("division by zero polynomial");
    // Extract lead coefficient of den in v; require it to be a constant.
    MultiPoly lead(num.nvars);
    for (auto& [e, c] : den.terms)
        if (e[v] == dd) {
            std::vector<int> e2 = e;
            e2[v] = 0;
            lead.add_term(e2, c);
        }
    std::vector<int> zero(num.nvars, 0);
    if (lead.terms.size() != 1 || lead.terms.begin()->first != zero)
        throw std::runtime_error("divide_exact: divisor not monic-in-v");
    Rat lc = lead.terms.begin()->second;

    MultiPoly rem = num, q(num.nvars);
    while (!rem.is_zero()) {
        int dr = rem.degree_in(v);
        if (dr < dd) return false;
        // Collect terms of top degree in v.
        MultiPoly top(num.nvars);
        for (auto& [e, c] : rem.terms)
            if (e[v] == dr) {
                std::vector<int> e2 = e;
                e2[v] = dr - dd;
                top.add_term(e2, c / lc);
            }
        q += top;
        rem -= top * den;
        if (!rem.is_zero() && rem.degree_in(v) >= dr) throw std::runtime_error("division stalled");
    }
    *quot = q;
    return true;
}

}  // namespace kln
