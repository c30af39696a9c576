#ifndef FOXWRIGHT_ZETA_HPP
#define FOXWRIGHT_ZETA_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "foxwright/errors.hpp"
#include "foxwright/fox_wright.hpp"
#include "foxwright/gamma.hpp"
#include "foxwright/quadrature.hpp"
#include "foxwright/summation.hpp"

namespace foxwright {

using complex_d = std::complex<double>;

// Hurwitz zeta sum_{n>=0} (n+a)^{-s}: twenty direct terms plus the
// Euler-Maclaurin correction through the B12 Bernoulli term, uniformly
// ~1e-13 relative over s in (1, 20], a in (0, 10] and beyond.
inline double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0))
        throw std::domain_error("hurwitz_zeta: s > 1 required");
    if (!(a > 0.0))
        throw std::domain_error("hurwitz_zeta: a > 0 required");
    constexpr int N = 20;
    kahan_sum<double> acc;
    for (int n = 0; n < N; ++n)
        acc.add(std::pow(n + a, -s));
    const double w = N + a;
    acc.add(std::pow(w, 1.0 - s) / (s - 1.0));
    acc.add(0.5 * std::pow(w, -s));
    // B_{2j} / (2j)! for j = 1..6
    constexpr double coef[6] = {1.0 / 12.0,        -1.0 / 720.0,
                                1.0 / 30240.0,     -1.0 / 1209600.0,
                                1.0 / 47900160.0,  -691.0 / 1307674368000.0};
    double poch = s;                    // (s)_{2j-1}
    double wp = std::pow(w, -s - 1.0);  // w^{-s-2j+1}
    for (int j = 0; j < 6; ++j) {
        acc.add(coef[j] * poch * wp);
        poch *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        wp /= w * w;
    }
    return acc.value();
}

inline double riemann_zeta(double s) {
    if (!(s > 1.0))
        throw std::domain_error("riemann_zeta: s > 1 required");
    return hurwitz_zeta(s, 1.0);
}

namespace detail {

// Direct power-series summation of sum_{n>=n0} z^n / (n+a)^s with three
// tail regimes: geometric interior bound, midpoint-integral tail at z = 1,
// and the summation-by-parts (Abel) bound 2 (n+a)^{-s} / |1-z| on the
// unit circle.
inline complex_d power_sum(complex_d z, double s, double a, long n0,
                           double target_rel) {
    const double az = std::abs(z);
    kahan_sum<complex_d> acc;
    if (az == 0.0) {
        if (n0 == 0)
            acc.add(std::pow(a, -s));
        return acc.value();
    }
    const bool boundary = az >= 1.0 - 1e-14;
    const bool at_one = boundary && std::abs(z - 1.0) <= 1e-13;

    if (at_one) {
        const long N = 20000;
        for (long n = n0; n <= N; ++n)
            acc.add(std::pow(n + a, -s));
        acc.add(std::pow(N + 0.5 + a, 1.0 - s) / (s - 1.0));
        return acc.value();
    }

    const complex_d phase = z / az;
    complex_d zn = std::pow(az, static_cast<double>(n0)) *
                   (n0 == 0 ? complex_d(1.0) : std::pow(phase, static_cast<double>(n0)));
    const long cap = 5000000;
    const double abel = boundary ? 2.0 / std::abs(1.0 - z) : 0.0;
    const double boundary_rel = std::max(target_rel, 5e-12);
    double prev_abs = 0.0;
    for (long n = n0; n < n0 + cap; ++n) {
        const complex_d term = zn * std::pow(n + a, -s);
        acc.add(term);
        const double scale = std::max(std::abs(acc.value()), 1e-30);
        if (boundary) {
            if (abel * std::pow(n + 1 + a, -s) <= boundary_rel * scale)
                return acc.value();
        } else {
            const double at = std::abs(term);
            if (prev_abs > 0.0 && at > 0.0) {
                const double r = at / prev_abs;
                if (r < 1.0 && at * r / (1.0 - r) <= target_rel * scale)
                    return acc.value();
            }
            if (at == 0.0 && n > n0)
                return acc.value();
            prev_abs = at;
        }
        zn *= z;
    }
    throw accuracy_error("power_sum: tail bound not met within term cap",
                         std::abs(acc.value()), 1.0);
}

} // namespace detail

// Polylogarithm Li_s(z) = sum_{n>=1} z^n / n^s for |z| < 1, or |z| = 1 with s > 1.
inline complex_d polylog(double s, complex_d z) {
    const double az = std::abs(z);
    if (az > 1.0 + 1e-12)
        throw std::domain_error("polylog: |z| <= 1 required");
    if (az >= 1.0 - 1e-14 && !(s > 1.0))
        throw std::domain_error("polylog: s > 1 required on |z| = 1");
    if (az == 0.0)
        return {};
    return detail::power_sum(z, s, 0.0, 1, 1e-15);
}

inline double polylog(double s, double x) { return polylog(s, complex_d(x)).real(); }

// Hurwitz-Lerch zeta Phi(z, s, a) = sum_{n>=0} z^n / (n+a)^s under (H3):
// |z| < 1 with any real s, or |z| = 1 with s > 1; a > 0.
inline complex_d lerch_phi(complex_d z, double s, double a) {
    if (!(a > 0.0))
        throw std::domain_error("lerch_phi: a > 0 required");
    const double az = std::abs(z);
    if (az > 1.0 + 1e-12)
        throw std::domain_error("lerch_phi: |z| <= 1 required (H3)");
    if (az >= 1.0 - 1e-14 && !(s > 1.0))
        throw std::domain_error("lerch_phi: s > 1 required on |z| = 1 (H3)");
    if (az == 0.0)
        return std::pow(a, -s);
    return detail::power_sum(z, s, a, 0, 1e-15);
}

inline double lerch_phi(double z, double s, double a) {
    return lerch_phi(complex_d(z), s, a).real();
}

// Parameter block of the extended Hurwitz-Lerch zeta
//   (prod Gamma(mu_j) / prod Gamma(lambda_j)) *
//   sum_k [prod Gamma(lambda_j + k rho_j) / prod Gamma(mu_j + k sigma_j)]
//        * z^k / (k! (k+a)^s).
class lerch_params {
public:
    lerch_params(std::vector<param_pair> lambdas, std::vector<param_pair> mus, double s,
                 double a)
        : lambdas_(std::move(lambdas)), mus_(std::move(mus)), s_(s), a_(a) {
        validate();
    }

    const std::vector<param_pair>& lambdas() const noexcept { return lambdas_; }
    const std::vector<param_pair>& mus() const noexcept { return mus_; }
    double s() const noexcept { return s_; }
    double a() const noexcept { return a_; }

    lerch_params with_first_lambda_offset(double new_offset) const {
        lerch_params copy = *this;
        if (copy.lambdas_.empty())
            throw std::domain_error("lerch_params: no leading lambda pair");
        copy.lambdas_[0].offset = new_offset;
        return copy;
    }

private:
    void validate() const {
        if (!(a_ > 0.0))
            throw std::domain_error("lerch_params: a > 0 required");
        double sum_rho = 0.0, sum_sigma = 0.0;
        for (const auto& p : lambdas_) {
            if (!(p.weight > 0.0))
                throw std::domain_error("lerch_params: rho weights must be positive");
            if (detail::is_nonpositive_integer(p.offset))
                throw std::domain_error("lerch_params: lambda at a gamma pole");
            sum_rho += p.weight;
        }
        for (const auto& p : mus_) {
            if (!(p.weight > 0.0))
                throw std::domain_error("lerch_params: sigma weights must be positive");
            if (!(p.offset > 0.0))
                throw std::domain_error("lerch_params: mu offsets must be positive");
            sum_sigma += p.weight;
        }
        if (sum_sigma - sum_rho < -1.0 - 1e-12)
            throw std::domain_error("lerch_params: Delta_1 < -1 (divergent family)");
    }

    std::vector<param_pair> lambdas_;
    std::vector<param_pair> mus_;
    double s_;
    double a_;
};

struct lerch_convergence_info {
    double delta1;
    double nabla_star;
    double xi;
};

inline lerch_convergence_info lerch_convergence(const lerch_params& params) {
    double sum_rho = 0.0, sum_sigma = 0.0, sum_lambda = 0.0, sum_mu = 0.0;
    double log_nabla = 0.0;
    for (const auto& p : params.lambdas()) {
        sum_rho += p.weight;
        sum_lambda += p.offset;
        log_nabla -= p.weight * std::log(p.weight);
    }
    for (const auto& p : params.mus()) {
        sum_sigma += p.weight;
        sum_mu += p.offset;
        log_nabla += p.weight * std::log(p.weight);
    }
    lerch_convergence_info info;
    info.delta1 = sum_sigma - sum_rho;
    info.nabla_star = std::exp(log_nabla);
    info.xi = params.s() + sum_mu - sum_lambda +
              (static_cast<double>(params.lambdas().size()) -
               static_cast<double>(params.mus().size())) / 2.0;
    return info;
}

namespace detail {

// Shared gamma-ratio series engine.  With lerch_weight the terms carry
// z^k / (k! (k+a)^s); without it they form the plain Fox-Wright series at
// (possibly complex) z, prefactored by prod Gamma(mu) / prod Gamma(lambda).
// The prefactor's log is folded into every term so the normalizing gammas
// never materialize at double scale.
template <class T>
series_result<T> gamma_ratio_series(const std::vector<param_pair>& lams,
                                    const std::vector<param_pair>& mus, T z, double s,
                                    double a, const truncation_policy& policy,
                                    bool lerch_weight) {
    policy.validate();
    double log_pref = 0.0;
    int pref_sign = 1;
    for (const auto& p : mus)
        log_pref += std::lgamma(p.offset);
    for (const auto& p : lams) {
        const signed_log g = signed_log_gamma(p.offset);
        log_pref -= g.log_abs;
        pref_sign *= g.sign;
    }

    constexpr bool is_complex = std::is_same_v<T, complex_d>;
    const double az = std::abs(z);
    const double log_abs_z = az == 0.0 ? 0.0 : std::log(az);
    T phase_step{1.0};
    int sign_z = 1;
    if constexpr (is_complex) {
        if (az > 0.0)
            phase_step = z / az;
    } else {
        sign_z = z < 0.0 ? -1 : 1;
    }

    series_monitor mon(policy);
    kahan_sum<T> acc;
    series_result<T> out;
    T phase{1.0};
    bool stopped = false;
    long k = 0;
    for (; k < policy.max_terms; ++k) {
        double lt = log_pref - std::lgamma(static_cast<double>(k) + 1.0);
        int sign = pref_sign;
        for (const auto& p : lams) {
            const signed_log g = signed_log_gamma(p.offset + k * p.weight);
            lt += g.log_abs;
            sign *= g.sign;
        }
        for (const auto& p : mus) {
            const signed_log g = signed_log_gamma(p.offset + k * p.weight);
            lt -= g.log_abs;
            sign *= g.sign;
        }
        if (lerch_weight)
            lt -= s * std::log(k + a);
        if (az == 0.0) {
            if (k == 0) acc.add(T{sign * std::exp(lt)});
            stopped = true;
            ++k;
            break;
        }
        lt += k * log_abs_z;
        if (lt > 709.0)
            throw overflow_at_term("gamma_ratio_series: term overflow at k=" +
                                       std::to_string(k),
                                   k);
        T term;
        if constexpr (is_complex) {
            term = phase * (sign * std::exp(lt));
            phase *= phase_step;
        } else {
            const int zs = (sign_z < 0 && (k & 1)) ? -1 : 1;
            term = T{sign * zs * std::exp(lt)};
        }
        acc.add(term);
        if (mon.note_term(std::abs(term), std::abs(acc.value())) && k >= 1) {
            stopped = true;
            ++k;
            break;
        }
    }
    out.value = acc.value();
    out.terms_used = k;
    finalize_result(out, mon, policy, stopped);
    if (az == 0.0) {
        out.tail_estimate = 0.0;
        out.converged = true;
    }
    return out;
}

inline void check_lerch_convergence(const lerch_params& params, double az) {
    const lerch_convergence_info info = lerch_convergence(params);
    const double eps = 1e-12;
    if (info.delta1 < -1.0 - eps)
        throw std::domain_error("extended_lerch_phi: Delta_1 < -1 (divergent)");
    if (std::fabs(info.delta1 + 1.0) <= eps) {
        if (!(az < info.nabla_star * (1.0 - eps)))
            throw std::domain_error(
                "extended_lerch_phi: Delta_1 = -1 requires |z| strictly inside "
                "nabla* (boundary points are rejected)");
    }
}

} // namespace detail

// Extended Hurwitz-Lerch zeta at complex z.
inline series_result<complex_d> extended_lerch_phi(const lerch_params& params, complex_d z,
                                                   const truncation_policy& policy = {}) {
    detail::check_lerch_convergence(params, std::abs(z));
    return detail::gamma_ratio_series<complex_d>(params.lambdas(), params.mus(), z,
                                                 params.s(), params.a(), policy, true);
}

// Real-z overload.
inline series_result<double> extended_lerch_phi(const lerch_params& params, double z,
                                                const truncation_policy& policy = {}) {
    detail::check_lerch_convergence(params, std::fabs(z));
    return detail::gamma_ratio_series<double>(params.lambdas(), params.mus(), z,
                                              params.s(), params.a(), policy, true);
}

// Integral representation of the extended Hurwitz-Lerch zeta:
//   Phi = (1/Gamma(s)) int_0^inf x^{s-1} e^{-a x} PsiTilde[z e^{-x}] dx,
// PsiTilde being the gamma-ratio series prefactored by prod Gamma(mu)/Gamma(lambda).
// Requires |z| < 1 so the inner series stays short near x = 0.
inline complex_d extended_lerch_phi_integral(const lerch_params& params, complex_d z,
                                             const quadrature_spec& spec = {}) {
    if (!(std::abs(z) < 1.0))
        throw std::domain_error("extended_lerch_phi_integral: |z| < 1 required");
    if (!(params.s() > 0.0))
        throw std::domain_error("extended_lerch_phi_integral: s > 0 required");
    truncation_policy inner;
    inner.rel_tol = 1e-15;
    quadrature_spec qs = spec;
    qs.left_exponent = params.s() - 1.0;
    const double s = params.s(), a = params.a();
    const complex_d integral = integrate_semi_infinite_cx(
        [&](double x) -> complex_d {
            const double factor = std::exp((s - 1.0) * std::log(x) - a * x);
            if (factor == 0.0 || !std::isfinite(factor))
                return {};
            const complex_d w = z * std::exp(-x);
            return factor * detail::gamma_ratio_series<complex_d>(
                                params.lambdas(), params.mus(), w, 0.0, 1.0, inner, false)
                                .value;
        },
        qs);
    return integral / std::exp(std::lgamma(s));
}

inline double extended_lerch_phi_integral(const lerch_params& params, double z,
                                          const quadrature_spec& spec = {}) {
    return extended_lerch_phi_integral(params, complex_d(z), spec).real();
}

// k-th upper-shifted member of the unit-first-weight family evaluated through
// the integral representation.  For rho_1 = 1 the inner series collapses, via
// the Euler transformation, to (1 - w)^{-(k+1)} times a terminating
// hypergeometric polynomial, which keeps the integrand cheap for every x and
// extends evaluation to |z| = 1 (z != 1), where the defining series of the
// shifted members no longer converges termwise.
inline complex_d ext_lerch_shifted_integral(double lambda1, long k, complex_d z, double s,
                                            double a, const quadrature_spec& spec = {}) {
    if (!(lambda1 > 0.0))
        throw std::domain_error("ext_lerch_shifted_integral: lambda1 > 0 required");
    if (k < 0)
        throw std::domain_error("ext_lerch_shifted_integral: k >= 0 required");
    if (!(s > 0.0) || !(a > 0.0))
        throw std::domain_error("ext_lerch_shifted_integral: s, a > 0 required");
    const double az = std::abs(z);
    if (az > 1.0 + 1e-12 || std::abs(z - 1.0) < 1e-9)
        throw std::domain_error("ext_lerch_shifted_integral: need |z| <= 1, z != 1");

    // Coefficients of 2F1(-k, lambda1 - 1; lambda1; w).
    std::vector<double> coef(static_cast<std::size_t>(k) + 1);
    coef[0] = 1.0;
    for (long j = 0; j < k; ++j)
        coef[j + 1] = coef[j] * ((-static_cast<double>(k) + j) * (lambda1 - 1.0 + j)) /
                      ((lambda1 + j) * (j + 1.0));

    quadrature_spec qs = spec;
    qs.left_exponent = s - 1.0;
    const complex_d integral = integrate_semi_infinite_cx(
        [&](double x) -> complex_d {
            const double factor = std::exp((s - 1.0) * std::log(x) - a * x);
            if (factor == 0.0 || !std::isfinite(factor))
                return {};
            const complex_d w = z * std::exp(-x);
            complex_d poly{};
            for (long j = k; j >= 0; --j)
                poly = poly * w + coef[static_cast<std::size_t>(j)];
            const complex_d gap = 1.0 - w;
            return factor * poly * std::pow(gap, -(static_cast<double>(k) + 1.0));
        },
        qs);
    return integral / std::exp(std::lgamma(s));
}

} // namespace foxwright

#endif
