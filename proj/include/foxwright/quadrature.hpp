#ifndef FOXWRIGHT_QUADRATURE_HPP
#define FOXWRIGHT_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foxwright/errors.hpp"
#include "foxwright/fox_wright.hpp"
#include "foxwright/gamma.hpp"

namespace foxwright {

// Contract for one integration: tolerances, refinement budget, and the
// declared endpoint exponents of the integrand (both must exceed -1; the
// engine never infers them from samples).
struct quadrature_spec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_levels = 12;
    double left_exponent = 0.0;
    double right_exponent = 0.0;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::domain_error("quadrature_spec: tolerances must be positive");
        if (max_levels < 2)
            throw std::domain_error("quadrature_spec: max_levels must be >= 2");
        if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
            throw std::domain_error("quadrature_spec: endpoint exponents must exceed -1");
    }
};

namespace detail {

inline double error_norm(double v) { return std::fabs(v); }
inline double error_norm(const std::complex<double>& v) { return std::abs(v); }

// tanh-sinh rule on (lo, hi).  The integrand receives (x, x - lo, hi - x)
// with the endpoint distances computed from the transform directly, so
// integrable singularities at either end are sampled at full precision.
template <class V, class F>
V tanh_sinh(F&& f, double lo, double hi, const quadrature_spec& spec) {
    spec.validate();
    if (!(hi > lo))
        throw std::domain_error("tanh_sinh: empty interval");
    const double half = 0.5 * (hi - lo);
    constexpr double t_max = 6.2;
    constexpr double min_dist_frac = 1e-290;

    // Samples accumulate into a running total; I_L = h_L * total.
    const auto sample = [&](double t, V& dest) {
        const double u = 0.5 * M_PI * std::sinh(t);
        const double eu = std::exp(-2.0 * std::fabs(u));
        const double frac_near = 2.0 * eu / (1.0 + eu);     // 1 - |tanh u|
        const double frac_far = 2.0 / (1.0 + eu);           // 1 + |tanh u|
        if (frac_near < min_dist_frac)
            return; // beyond double resolution; integrable tail is negligible
        const double sech2 = 4.0 * eu / ((1.0 + eu) * (1.0 + eu));
        const double w = half * 0.5 * M_PI * std::cosh(t) * sech2;
        double dlo, dhi, x;
        if (u >= 0.0) {
            dhi = half * frac_near;
            dlo = half * frac_far;
            x = hi - dhi;
        } else {
            dlo = half * frac_near;
            dhi = half * frac_far;
            x = lo + dlo;
        }
        const V fv = f(x, dlo, dhi);
        if (!std::isfinite(error_norm(fv)))
            throw std::domain_error("tanh_sinh: integrand non-finite at x=" +
                                    std::to_string(x));
        dest += fv * w;
    };

    V total{};
    {
        V level0{};
        sample(0.0, level0);
        for (double t = 1.0; t <= t_max; t += 1.0) {
            sample(t, level0);
            sample(-t, level0);
        }
        total = level0;
    }
    double h = 1.0;
    V prev = total * h;
    double prev_err = 0.0;
    for (int level = 1; level <= spec.max_levels; ++level) {
        h *= 0.5;
        V news{};
        for (double t = h; t <= t_max; t += 2.0 * h) {
            sample(t, news);
            sample(-t, news);
        }
        total += news;
        const V cur = total * h;
        const double err = error_norm(cur - prev);
        const double tol = std::max(spec.abs_tol, spec.rel_tol * error_norm(cur));
        if (level >= 2 && err <= tol)
            return cur;
        prev = cur;
        prev_err = err;
    }
    throw accuracy_error("tanh_sinh: tolerance not met after max_levels",
                         error_norm(prev), prev_err);
}

// exp-sinh rule on (0, inf): x = exp((pi/2) sinh t).  Integrands must decay
// fast enough at infinity (everything here carries e^{-ax} or 1/(e^x - 1)).
template <class V, class F>
V exp_sinh(F&& f, const quadrature_spec& spec) {
    spec.validate();
    constexpr double t_max = 6.0;
    const auto sample = [&](double t, V& dest) {
        const double u = 0.5 * M_PI * std::sinh(t);
        if (u > 700.0 || u < -700.0)
            return; // x not representable; decay contract makes this negligible
        const double x = std::exp(u);
        const double w = x * 0.5 * M_PI * std::cosh(t);
        const V fv = f(x);
        if (!std::isfinite(error_norm(fv)))
            throw std::domain_error("exp_sinh: integrand non-finite at x=" +
                                    std::to_string(x));
        dest += fv * w;
    };

    V total{};
    {
        V level0{};
        sample(0.0, level0);
        for (double t = 1.0; t <= t_max; t += 1.0) {
            sample(t, level0);
            sample(-t, level0);
        }
        total = level0;
    }
    double h = 1.0;
    V prev = total * h;
    double prev_err = 0.0;
    for (int level = 1; level <= spec.max_levels; ++level) {
        h *= 0.5;
        V news{};
        for (double t = h; t <= t_max; t += 2.0 * h) {
            sample(t, news);
            sample(-t, news);
        }
        total += news;
        const V cur = total * h;
        const double err = error_norm(cur - prev);
        const double tol = std::max(spec.abs_tol, spec.rel_tol * error_norm(cur));
        if (level >= 2 && err <= tol)
            return cur;
        prev = cur;
        prev_err = err;
    }
    throw accuracy_error("exp_sinh: tolerance not met after max_levels",
                         error_norm(prev), prev_err);
}

} // namespace detail

// Finite-interval quadrature; f(x) only.  Endpoint behavior per the spec's
// declared exponents (> -1).
inline double integrate_finite(const std::function<double(double)>& f, double lo,
                               double hi, const quadrature_spec& spec = {}) {
    return detail::tanh_sinh<double>(
        [&](double x, double, double) { return f(x); }, lo, hi, spec);
}

// Variant passing endpoint distances for singular integrands: f(x, x-lo, hi-x).
inline double integrate_finite_ex(
    const std::function<double(double, double, double)>& f, double lo, double hi,
    const quadrature_spec& spec = {}) {
    return detail::tanh_sinh<double>(f, lo, hi, spec);
}

inline std::complex<double> integrate_finite_cx(
    const std::function<std::complex<double>(double, double, double)>& f, double lo,
    double hi, const quadrature_spec& spec = {}) {
    return detail::tanh_sinh<std::complex<double>>(f, lo, hi, spec);
}

// Semi-infinite quadrature over (0, inf) for exponentially decaying integrands.
inline double integrate_semi_infinite(const std::function<double(double)>& f,
                                      const quadrature_spec& spec = {}) {
    return detail::exp_sinh<double>(f, spec);
}

inline std::complex<double> integrate_semi_infinite_cx(
    const std::function<std::complex<double>(double)>& f,
    const quadrature_spec& spec = {}) {
    return detail::exp_sinh<std::complex<double>>(f, spec);
}

// Finite Laplace transform L_T f(s) = int_0^T e^{-s xi} f(xi) d xi.
inline double finite_laplace(const std::function<double(double)>& f, double T, double s,
                             const quadrature_spec& spec = {}) {
    if (!(T > 0.0))
        throw std::domain_error("finite_laplace: T must be positive");
    return detail::tanh_sinh<double>(
        [&](double x, double, double) { return std::exp(-s * x) * f(x); }, 0.0, T, spec);
}

inline double finite_laplace_ex(const std::function<double(double, double, double)>& f,
                                double T, double s, const quadrature_spec& spec = {}) {
    if (!(T > 0.0))
        throw std::domain_error("finite_laplace_ex: T must be positive");
    return detail::tanh_sinh<double>(
        [&](double x, double dlo, double dhi) { return std::exp(-s * x) * f(x, dlo, dhi); },
        0.0, T, spec);
}

// Closed-form representing-measure kernel for the p = q = 1, equal-weight
// case: H(xi) = xi^{alpha/A} (1 - xi^{1/A})^{beta-alpha-1} / (A Gamma(beta-alpha)).
struct kernel_pq11 {
    double A;
    double alpha;
    double beta;

    kernel_pq11(double A_, double alpha_, double beta_) : A(A_), alpha(alpha_), beta(beta_) {
        if (!(A > 0.0) || !(alpha > 0.0) || !(beta > alpha))
            throw std::domain_error("kernel_pq11: require A > 0 and beta > alpha > 0");
    }
};

namespace detail {

// Kernel value with 1 - xi^{1/A} computed from the distance to 1.
inline double h_kernel_dist(const kernel_pq11& k, double xi, double one_minus_xi) {
    const double root_gap = -std::expm1(std::log1p(-one_minus_xi) / k.A); // 1 - xi^{1/A}
    return std::pow(xi, k.alpha / k.A) * std::pow(root_gap, k.beta - k.alpha - 1.0) /
           (k.A * std::exp(std::lgamma(k.beta - k.alpha)));
}

} // namespace detail

inline double h_kernel_pq11(const kernel_pq11& k, double xi) {
    if (!(xi > 0.0) || !(xi < 1.0))
        throw std::domain_error("h_kernel_pq11: xi must lie in (0,1)");
    return detail::h_kernel_dist(k, xi, 1.0 - xi);
}

// Proof-form right-hand side shared by the two shifted generating-function
// theorems: (rho/(1-t))^lambda * int_0^rho xi^{tau-1} (rho-xi)^{-lambda} H(xi) dxi,
// with rho = 1 in this equal-weight specialization.
inline double theorem2_integral_rhs(const fox_wright_params& params, double lambda,
                                    double tau, double t,
                                    const quadrature_spec& spec = {}) {
    if (params.upper().size() != 1 || params.lower().size() != 1)
        throw std::domain_error("theorem2_integral_rhs: requires p = q = 1");
    const double A = params.upper()[0].weight;
    const double B = params.lower()[0].weight;
    const double alpha = params.upper()[0].offset;
    const double beta = params.lower()[0].offset;
    if (!(A > 0.0) || std::fabs(A - B) > 1e-14)
        throw std::domain_error("theorem2_integral_rhs: equal positive weights required");
    const kernel_pq11 kern(A, alpha, beta);
    if (!(lambda > 0.0) || !(lambda < beta - alpha))
        throw std::domain_error(
            "theorem2_integral_rhs: integrability needs 0 < lambda < beta - alpha");
    if (!(tau >= 0.0))
        throw std::domain_error("theorem2_integral_rhs: tau must be >= 0");
    if (!(tau + alpha / A > 0.0))
        throw std::domain_error("theorem2_integral_rhs: tau + alpha/A must be positive");
    if (!(t > 0.0) || !(t < 1.0))
        throw std::domain_error("theorem2_integral_rhs: t must lie in (0,1)");

    quadrature_spec qs = spec;
    qs.left_exponent = tau + alpha / A - 1.0;
    qs.right_exponent = beta - alpha - 1.0 - lambda;
    const double integral = detail::tanh_sinh<double>(
        [&](double xi, double dlo, double dhi) {
            return std::pow(dlo, tau - 1.0) * std::pow(dhi, -lambda) *
                   detail::h_kernel_dist(kern, xi, dhi);
        },
        0.0, 1.0, qs);
    return std::pow(1.0 - t, -lambda) * integral;
}

} // namespace foxwright

#endif
