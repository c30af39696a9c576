#ifndef FOXWRIGHT_MATHIEU_HPP
#define FOXWRIGHT_MATHIEU_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "foxwright/errors.hpp"
#include "foxwright/gamma.hpp"
#include "foxwright/quadrature.hpp"
#include "foxwright/summation.hpp"

namespace foxwright {

// Generalized Mathieu-type series S_mu^{(alpha,beta)}(r; a) =
// sum_{k>=1} 2 a_k^beta / (r^2 + a_k^alpha)^mu over a positive divergent
// sequence, default a_k = k^{1/alpha}.  For the default sequence the
// auxiliary series sum a_k^{-(mu alpha - beta)} converges iff
// mu - beta/alpha > 1, checked at construction.
struct mathieu_spec {
    double mu;
    double alpha;
    double beta;
    double r;
    std::function<double(long)> sequence;  // empty => default k^{1/alpha}
    // Optional bound on the exact tail sum_{k>N} 2 a_k^beta/(r^2+a_k^alpha)^mu;
    // required for convergence claims with non-default sequences.
    std::function<double(long)> tail_bound;

    mathieu_spec(double mu_, double alpha_, double beta_, double r_,
                 std::function<double(long)> seq = {},
                 std::function<double(long)> tail = {})
        : mu(mu_), alpha(alpha_), beta(beta_), r(r_), sequence(std::move(seq)),
          tail_bound(std::move(tail)) {
        if (!(mu > 0.0) || !(alpha > 0.0) || !(beta >= 0.0) || !(r > 0.0))
            throw std::domain_error("mathieu_spec: require mu, alpha, r > 0 and beta >= 0");
        if (default_sequence() && !(mu - beta / alpha > 1.0))
            throw std::domain_error(
                "mathieu_spec: auxiliary series divergent (need mu - beta/alpha > 1)");
    }

    bool default_sequence() const { return !sequence; }

    double term(long k) const {
        if (default_sequence()) {
            // a_k = k^{1/alpha}: a_k^alpha = k, a_k^beta = k^{beta/alpha}.
            const double n = static_cast<double>(k);
            return 2.0 * std::exp((beta / alpha) * std::log(n) -
                                  mu * std::log(r * r + n));
        }
        const double ak = sequence(k);
        if (!(ak > 0.0))
            throw std::domain_error("mathieu_spec: sequence must be positive");
        return 2.0 * std::pow(ak, beta) / std::pow(r * r + std::pow(ak, alpha), mu);
    }
};

namespace detail {

// Tail of sum_{n>N} t(n) for the default-sequence term
// t(x) = 2 x^c (r^2+x)^{-m}: the midpoint integral int_{N+1/2}^inf t dx
// plus the t'(N+1/2)/24 Euler-Maclaurin correction; the returned bound
// covers the neglected higher-order terms.
struct tail_correction {
    double value;
    double bound;
};

inline tail_correction mathieu_default_tail(double c, double m, double r, long N,
                                            const quadrature_spec& spec) {
    const double edge = static_cast<double>(N) + 0.5;
    const double r2 = r * r;
    const auto t = [&](double x) {
        return 2.0 * std::exp(c * std::log(x) - m * std::log(r2 + x));
    };
    // int_{edge}^inf t dx via x = edge/u on u in (0,1); u-exponent m - c - 2 > -1.
    quadrature_spec qs = spec;
    qs.left_exponent = m - c - 2.0;
    const double integral = detail::tanh_sinh<double>(
        [&](double u, double, double) {
            const double x = edge / u;
            return t(x) * edge / (u * u);
        },
        0.0, 1.0, qs);
    const double tprime = t(edge) * (c / edge - m / (r2 + edge));
    const double value = integral + tprime / 24.0;
    // Remainder after the t'/24 correction scales like (7/5760) t''', and
    // |t'''| <= |t'| (m-c+1)(m-c+2)/edge^2 for this algebraically decaying term.
    const double decay = m - c;
    const double bound = 7.0 / 5760.0 * std::fabs(tprime) * (decay + 1.0) *
                             (decay + 2.0) / (edge * edge) * 4.0 +
                         spec.abs_tol;
    return {value, bound};
}

} // namespace detail

// Truncated Mathieu series with integral-comparison tail handling for the
// default sequence.  Custom sequences converge only if a tail_bound callback
// is supplied; otherwise the partial sum is returned with converged = false.
inline series_result<double> mathieu_series(const mathieu_spec& spec,
                                            const truncation_policy& policy = {},
                                            const quadrature_spec& quad = {}) {
    policy.validate();
    series_result<double> out;
    kahan_sum<double> acc;

    if (spec.default_sequence()) {
        const double c = spec.beta / spec.alpha;
        const double m = spec.mu;
        long N = std::max<long>(512, std::lround(8.0 * (1.0 + spec.r * spec.r)));
        N = std::min<long>(N, policy.max_terms);
        for (;;) {
            for (long k = out.terms_used + 1; k <= N; ++k)
                acc.add(spec.term(k));
            out.terms_used = N;
            const auto tail = detail::mathieu_default_tail(c, m, spec.r, N, quad);
            const double scale = std::max(1.0, std::fabs(acc.value() + tail.value));
            if (tail.bound <= policy.rel_tol * scale) {
                out.value = acc.value() + tail.value;
                out.tail_estimate = tail.bound;
                out.converged = true;
                return out;
            }
            if (N >= policy.max_terms) {
                out.value = acc.value() + tail.value;
                out.tail_estimate = tail.bound;
                throw accuracy_error("mathieu_series: tail bound " +
                                         std::to_string(tail.bound) +
                                         " not met at max_terms",
                                     out.value, tail.bound);
            }
            N = std::min<long>(2 * N, policy.max_terms);
        }
    }

    long k = 1;
    for (; k <= policy.max_terms; ++k)
        acc.add(spec.term(k));
    out.terms_used = k - 1;
    out.value = acc.value();
    if (spec.tail_bound) {
        const double tb = spec.tail_bound(out.terms_used);
        out.tail_estimate = tb;
        const double scale = std::max(1.0, std::fabs(out.value));
        out.converged = tb <= policy.rel_tol * scale;
    } else {
        out.tail_estimate = spec.term(policy.max_terms);
        out.converged = false;
    }
    return out;
}

// The series through its integral representation (default sequence,
// nu = 1/alpha):
//   S = (2/Gamma(mu)) int_0^inf x^{mu - beta/alpha - 1} / (e^x - 1)
//         * 1Psi1[(mu,1); (mu - beta/alpha, 1) | -r^2 x] dx.
// Serves as the cross-module consistency oracle against mathieu_series.
inline double mathieu_integral_form(const mathieu_spec& spec,
                                    const quadrature_spec& quad = {}) {
    if (!spec.default_sequence())
        throw std::domain_error("mathieu_integral_form: default sequence required");
    const double c = spec.mu - spec.beta / spec.alpha; // > 1 by construction
    const double mu = spec.mu;
    const double r2 = spec.r * spec.r;

    // 1Psi1[(mu,1);(c,1)|-w] = Gamma(mu)/Gamma(c) e^{-w} 1F1(c-mu; c; w),
    // Kummer-transformed so all but finitely many terms share one sign; the
    // scaled sum is tracked in log space because w grows with the node.
    const auto psi11_neg = [&](double w) {
        double term = 1.0, sum = 1.0;
        double log_scale = 0.0;
        const double am = c - mu; // -beta/alpha <= 0
        for (long j = 0; j < 100000; ++j) {
            term *= (am + j) * w / ((c + j) * (j + 1.0));
            sum += term;
            if (term == 0.0 || std::fabs(term) <= 1e-17 * std::fabs(sum))
                break;
            if (std::fabs(sum) > 1e250 || std::fabs(term) > 1e250) {
                sum *= 1e-250;
                term *= 1e-250;
                log_scale += std::log(1e250);
            }
        }
        const double lg = std::lgamma(mu) - std::lgamma(c) - w + log_scale;
        return (sum < 0.0 ? -1.0 : 1.0) * std::exp(lg + std::log(std::fabs(sum)));
    };

    quadrature_spec qs = quad;
    qs.left_exponent = c - 2.0; // x^{c-1}/(e^x - 1) ~ x^{c-2} near 0
    const double integral = integrate_semi_infinite(
        [&](double x) {
            if (x > 700.0)
                return 0.0;
            const double em = std::expm1(x);
            const double base = std::exp((c - 1.0) * std::log(x)) / em;
            if (base == 0.0 || !std::isfinite(base))
                return 0.0;
            return base * psi11_neg(r2 * x);
        },
        qs);
    return 2.0 / std::exp(std::lgamma(mu)) * integral;
}

} // namespace foxwright

#endif
