#pragma once

// Two-mode beam-splitter (barrier) algebra. A barrier of strength eps acts on
// an ordered amplitude pair (a, b) as the unitary
//
//     U(eps) = [ cos(eps)    i*sin(eps) ]
//              [ i*sin(eps)  cos(eps)   ]
//
// so reflection carries cos(eps) and transmission carries i*sin(eps). Powers
// compose as [U(eps)]^j = U(j*eps). End-mirror bounces carry no extra -1
// bookkeeping phase; every -1 in the protocols emerges from composition
// (cos(pi) = -1).

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>

#include "cqc/dd.hpp"

namespace cqc {

using ComplexAmp = std::complex<double>;
using AmpPair = std::pair<ComplexAmp, ComplexAmp>;

class Barrier {
  public:
    explicit Barrier(double epsilon) : Barrier(dd(epsilon)) {}

    // eps = pi/(2n) formed in extended precision, so that n barriers compose
    // to a quarter rotation to ~1e-32 instead of ~1e-16.
    static Barrier quarter_fraction(long n) {
        if (n < 1) throw std::invalid_argument("quarter_fraction requires n >= 1");
        return Barrier(dd_pi / dd(2.0 * static_cast<double>(n)));
    }

    double epsilon() const { return to_double(eps_); }
    double reflection() const { return to_double(cos_); }
    ComplexAmp transmission() const { return {0.0, to_double(sin_)}; }

    std::array<std::array<ComplexAmp, 2>, 2> matrix() const {
        ComplexAmp c{reflection(), 0.0};
        ComplexAmp t = transmission();
        return {{{c, t}, {t, c}}};
    }

    dd epsilon_dd() const { return eps_; }
    dd cos_dd() const { return cos_; }
    dd sin_dd() const { return sin_; }

  private:
    explicit Barrier(dd epsilon) : eps_(epsilon) {
        double e = to_double(epsilon);
        if (!(e >= 0.0) || !(e <= to_double(dd_half_pi))) {
            throw std::invalid_argument("barrier strength must lie in [0, pi/2]");
        }
        cos_ = dd_cos(epsilon);
        sin_ = dd_sin(epsilon);
    }

    dd eps_, cos_, sin_;
};

namespace detail {

inline ddcomplex lift(ComplexAmp z) { return {dd(z.real()), dd(z.imag())}; }
inline ComplexAmp lower(const ddcomplex& z) { return {to_double(z.re), to_double(z.im)}; }

}  // namespace detail

inline AmpPair apply_barrier(const Barrier& b, const AmpPair& pair) {
    ddcomplex a = detail::lift(pair.first);
    ddcomplex c = detail::lift(pair.second);
    dd_rotate(a, c, b.cos_dd(), b.sin_dd());
    return {detail::lower(a), detail::lower(c)};
}

// j-fold barrier application. Computed twice internally, by iterating the
// rotation and by the single composed rotation U(j*eps), and cross-checked to
// 1e-12 before returning the composed-rotation result.
inline AmpPair barrier_power(const Barrier& b, long long j, const AmpPair& pair) {
    if (j < 0) throw std::invalid_argument("barrier_power requires j >= 0");

    ddcomplex ia = detail::lift(pair.first);
    ddcomplex ic = detail::lift(pair.second);
    for (long long k = 0; k < j; ++k) dd_rotate(ia, ic, b.cos_dd(), b.sin_dd());

    dd angle = dd(static_cast<double>(j)) * b.epsilon_dd();
    dd c = dd_cos(angle), s = dd_sin(angle);
    ddcomplex ca = detail::lift(pair.first);
    ddcomplex cc = detail::lift(pair.second);
    dd_rotate(ca, cc, c, s);

    auto far = [](const ddcomplex& x, const ddcomplex& y) {
        return std::abs(to_double(x.re - y.re)) > 1e-12 ||
               std::abs(to_double(x.im - y.im)) > 1e-12;
    };
    if (far(ia, ca) || far(ic, cc)) {
        throw std::logic_error("barrier_power: iterated and composed results diverged");
    }
    return {detail::lower(ca), detail::lower(cc)};
}

}  // namespace cqc
