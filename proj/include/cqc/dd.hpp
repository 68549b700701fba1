#pragma once

// Double-double ("dd") arithmetic: an unevaluated sum of two doubles giving
// roughly 106 bits of significand. The simulator evolves amplitudes in dd so
// that probability is conserved far below the 1e-12 reporting tolerance even
// for runs with tens of millions of beam-splitter sub-steps. With plain
// doubles the stored cos/sin coefficients satisfy cos^2+sin^2 = 1 only to
// ~1e-16, and that defect compounds once per sub-step.
//
// Algorithms are the classical error-free transformations (Dekker's two_prod,
// Knuth's two_sum) used by every double-double package.

#include <cmath>
#include <cstdlib>

namespace cqc {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    dd t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }

inline double to_double(dd a) { return a.hi + a.lo; }
inline dd dd_abs(dd a) { return a.hi < 0.0 ? -a : a; }

inline constexpr dd dd_pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr dd dd_two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr dd dd_half_pi{1.5707963267948966, 6.123233995736766e-17};

namespace detail {

// Taylor series on the reduced argument |x| <= pi/4 + reduction slack.
inline dd sin_taylor(dd x) {
    dd x2 = x * x;
    dd term = x;
    dd sum = x;
    for (int k = 1; k <= 16; ++k) {
        term = term * x2;
        term = term / dd(-(2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if (std::abs(term.hi) < 1e-35) break;
    }
    return sum;
}

inline dd cos_taylor(dd x) {
    dd x2 = x * x;
    dd term{1.0};
    dd sum{1.0};
    for (int k = 1; k <= 16; ++k) {
        term = term * x2;
        term = term / dd(-(2.0 * k - 1.0) * (2.0 * k));
        sum += term;
        if (std::abs(term.hi) < 1e-35) break;
    }
    return sum;
}

// Reduce to r = x - k*(pi/2) with |r| <= pi/4 (plus rounding slack) and
// return the quadrant k mod 4.
inline dd trig_reduce(dd x, int& quadrant) {
    double n2pi = std::nearbyint(to_double(x) / to_double(dd_two_pi));
    dd r = x - dd(n2pi) * dd_two_pi;
    double k = std::nearbyint(to_double(r) / to_double(dd_half_pi));
    r = r - dd(k) * dd_half_pi;
    int q = static_cast<int>(k) & 3;
    quadrant = q < 0 ? q + 4 : q;
    return r;
}

}  // namespace detail

inline dd dd_sin(dd x) {
    int q = 0;
    dd r = detail::trig_reduce(x, q);
    switch (q) {
        case 0: return detail::sin_taylor(r);
        case 1: return detail::cos_taylor(r);
        case 2: return -detail::sin_taylor(r);
        default: return -detail::cos_taylor(r);
    }
}

inline dd dd_cos(dd x) {
    int q = 0;
    dd r = detail::trig_reduce(x, q);
    switch (q) {
        case 0: return detail::cos_taylor(r);
        case 1: return -detail::sin_taylor(r);
        case 2: return -detail::cos_taylor(r);
        default: return detail::sin_taylor(r);
    }
}

// Complex value with dd components, used only inside the evolution kernels.
struct ddcomplex {
    dd re, im;
};

// In-place two-mode beam-splitter rotation with reflection c = cos(eps) and
// transmission i*s = i*sin(eps):  (a, b) -> (c*a + i*s*b, i*s*a + c*b).
inline void dd_rotate(ddcomplex& a, ddcomplex& b, dd c, dd s) {
    dd are = c * a.re - s * b.im;
    dd aim = c * a.im + s * b.re;
    dd bre = c * b.re - s * a.im;
    dd bim = c * b.im + s * a.re;
    a = {are, aim};
    b = {bre, bim};
}

}  // namespace cqc
