#ifndef FOXWRIGHT_GAMMA_HPP
#define FOXWRIGHT_GAMMA_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace foxwright {

namespace detail {

inline bool near_integer(double x, double tol = 1e-11) {
    return std::fabs(x - std::round(x)) <= tol * std::max(1.0, std::fabs(x));
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.5 && near_integer(x);
}

// sin(pi*x) with exact argument reduction.
inline double sinpi(double x) {
    const double r = std::remainder(x, 2.0); // r in [-1, 1]
    const double ar = std::fabs(r);
    const double v = std::sin(M_PI * (ar <= 0.5 ? ar : 1.0 - ar));
    return std::copysign(v, r);
}

} // namespace detail

// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(x));
    return std::lgamma(x);
}

// {ln|Gamma(x)|, sign} for real non-pole x; negative arguments go through
// the reflection formula Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
struct signed_log {
    double log_abs;
    int sign;
};

inline signed_log signed_log_gamma(double x) {
    if (x > 0.0)
        return {std::lgamma(x), 1};
    if (detail::is_nonpositive_integer(x))
        throw std::domain_error("signed_log_gamma: pole at nonpositive integer " +
                                std::to_string(x));
    const double s = detail::sinpi(x);
    const double la = std::log(M_PI / std::fabs(s)) - std::lgamma(1.0 - x);
    return {la, s > 0.0 ? 1 : -1};
}

// Pochhammer symbol (tau)_k = tau (tau+1) ... (tau+k-1).
inline double pochhammer(double tau, long k) {
    if (k < 0)
        throw std::domain_error("pochhammer: k must be nonnegative");
    if (k == 0)
        return 1.0;
    const bool tau_nonpos_int = detail::is_nonpositive_integer(tau);
    if (k <= 30 || tau_nonpos_int) {
        // Nonpositive-integer tau gives an exact zero for k > -tau; the
        // direct product realizes it without special-casing.
        double p = 1.0;
        for (long i = 0; i < k; ++i) {
            p *= tau + static_cast<double>(i);
            if (p == 0.0)
                return 0.0;
        }
        return p;
    }
    const signed_log num = signed_log_gamma(tau + static_cast<double>(k));
    const signed_log den = signed_log_gamma(tau);
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

// Generalized binomial coefficient Gamma(l+1) / (Gamma(m+1) Gamma(l-m+1)).
inline double gen_binom(double lambda, double mu) {
    const auto falling = [](double l, long n) {
        double p = 1.0;
        for (long i = 0; i < n; ++i)
            p *= (l - static_cast<double>(i)) / static_cast<double>(i + 1);
        return p;
    };
    if (mu >= -0.5 && detail::near_integer(mu))
        return falling(lambda, std::lround(mu));
    // C(l,m) = C(l, l-m) rescues the pole/pole configurations where the
    // complementary index is a nonnegative integer.
    const double comp = lambda - mu;
    if (comp >= -0.5 && detail::near_integer(comp))
        return falling(lambda, std::lround(comp));

    const bool num_pole = detail::is_nonpositive_integer(lambda + 1.0);
    const bool den_pole = detail::is_nonpositive_integer(mu + 1.0) ||
                          detail::is_nonpositive_integer(lambda - mu + 1.0);
    if (den_pole && !num_pole)
        return 0.0;
    if (num_pole)
        throw std::domain_error("gen_binom: gamma pole without finite limit");
    const signed_log n = signed_log_gamma(lambda + 1.0);
    const signed_log d1 = signed_log_gamma(mu + 1.0);
    const signed_log d2 = signed_log_gamma(lambda - mu + 1.0);
    return n.sign * d1.sign * d2.sign * std::exp(n.log_abs - d1.log_abs - d2.log_abs);
}

// C(lambda+k-1, k) = Gamma(lambda+k) / (Gamma(lambda) k!), by the cancellation-free
// recurrence c_{k+1} = c_k (lambda+k)/(k+1).
inline double binom_coeff_shifted(double lambda, long k) {
    if (!(lambda > 0.0))
        throw std::domain_error("binom_coeff_shifted: lambda must be positive");
    if (k < 0)
        throw std::domain_error("binom_coeff_shifted: k must be nonnegative");
    double c = 1.0;
    for (long i = 0; i < k; ++i)
        c *= (lambda + static_cast<double>(i)) / static_cast<double>(i + 1);
    return c;
}

} // namespace foxwright

#endif
