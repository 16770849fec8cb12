#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>

namespace kln {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline cplx to_cplx(const Rat& r) { return cplx(to_double(r), 0.0); }

inline std::string rat_str(const Rat& r) { return r.str(); }

// Parse "p/q" or "p" into an exact rational.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt(s));
    return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

// Nearest rational with denominator <= qmax (continued fractions).
inline Rat rationalize(double x, long long qmax = 1000000) {
    bool neg = x < 0;
    if (neg) x = -x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        long long a = (long long)std::floor(v);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = v - (double)a;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    Rat r(p1, q1);
    return neg ? -r : r;
}

}  // namespace kln
