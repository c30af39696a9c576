#ifndef FOXWRIGHT_FOX_WRIGHT_HPP
#define FOXWRIGHT_FOX_WRIGHT_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foxwright/errors.hpp"
#include "foxwright/gamma.hpp"
#include "foxwright/summation.hpp"

namespace foxwright {

// One (offset, weight) pair: enters series terms as Gamma(offset + k*weight).
struct param_pair {
    double offset;
    double weight;
};

// Parameter block of the Fox-Wright series
//   sum_k prod_l Gamma(a_l + k A_l) / prod_l Gamma(b_l + k B_l) * z^k / k!
// All weights must be nonnegative, and no denominator argument b + k B may
// hit a nonpositive integer for any k >= 0 (a pole of the reciprocal term).
class fox_wright_params {
public:
    fox_wright_params(std::vector<param_pair> upper, std::vector<param_pair> lower)
        : upper_(std::move(upper)), lower_(std::move(lower)) {
        validate();
    }

    const std::vector<param_pair>& upper() const noexcept { return upper_; }
    const std::vector<param_pair>& lower() const noexcept { return lower_; }

    // Parameter shift (a_l + k A_l, A_l; b_l + k B_l, B_l); weights untouched.
    fox_wright_params shifted(long k) const {
        std::vector<param_pair> u = upper_, l = lower_;
        for (auto& p : u) p.offset += static_cast<double>(k) * p.weight;
        for (auto& p : l) p.offset += static_cast<double>(k) * p.weight;
        return fox_wright_params(std::move(u), std::move(l));
    }

private:
    void validate() const {
        for (const auto& p : upper_)
            if (!(p.weight >= 0.0))
                throw std::domain_error("fox_wright_params: upper weight must be >= 0");
        for (const auto& p : lower_) {
            if (!(p.weight >= 0.0))
                throw std::domain_error("fox_wright_params: lower weight must be >= 0");
            if (p.weight == 0.0) {
                if (detail::is_nonpositive_integer(p.offset))
                    throw std::domain_error("fox_wright_params: denominator gamma pole at " +
                                            std::to_string(p.offset));
            } else if (p.offset <= 0.5) {
                // b + kB <= 0 only for finitely many k; scan them for poles.
                const long kmax = static_cast<long>(std::floor(-p.offset / p.weight)) + 1;
                for (long k = 0; k <= kmax; ++k)
                    if (detail::is_nonpositive_integer(p.offset + k * p.weight))
                        throw std::domain_error(
                            "fox_wright_params: denominator gamma pole at k=" +
                            std::to_string(k));
            }
        }
    }

    std::vector<param_pair> upper_;
    std::vector<param_pair> lower_;
};

inline fox_wright_params fox_wright_shifted(const fox_wright_params& params, long k) {
    return params.shifted(k);
}

// Convergence data of the series: weight balance Delta, radius rho at
// Delta = -1, boundary exponent mu, and the rightmost-pole ratio
// gamma_min = min_j a_j / A_j (defined only when every upper weight is positive).
struct convergence_info {
    double delta;
    double rho;
    double mu;
    std::optional<double> gamma_min;
};

inline convergence_info convergence_params(const fox_wright_params& params) {
    double sum_a_weights = 0.0, sum_b_weights = 0.0;
    double sum_a = 0.0, sum_b = 0.0;
    double log_rho = 0.0;
    bool all_upper_positive = !params.upper().empty();
    std::optional<double> gamma_min;
    for (const auto& p : params.upper()) {
        sum_a_weights += p.weight;
        sum_a += p.offset;
        if (p.weight > 0.0) {
            log_rho -= p.weight * std::log(p.weight); // 0^0 = 1 convention: skip weight 0
            const double ratio = p.offset / p.weight;
            if (!gamma_min || ratio < *gamma_min) gamma_min = ratio;
        } else {
            all_upper_positive = false;
        }
    }
    for (const auto& p : params.lower()) {
        sum_b_weights += p.weight;
        sum_b += p.offset;
        if (p.weight > 0.0) log_rho += p.weight * std::log(p.weight);
    }
    convergence_info info;
    info.delta = sum_b_weights - sum_a_weights;
    info.rho = std::exp(log_rho);
    info.mu = sum_b - sum_a +
              (static_cast<double>(params.upper().size()) -
               static_cast<double>(params.lower().size())) / 2.0;
    info.gamma_min = all_upper_positive ? gamma_min : std::nullopt;
    return info;
}

namespace detail {

inline void check_fox_wright_convergence(const convergence_info& info, double z) {
    const double eps = 1e-12;
    if (info.delta < -1.0 - eps)
        throw std::domain_error("fox_wright: divergent regime (Delta < -1)");
    if (std::fabs(info.delta + 1.0) <= eps) {
        const double az = std::fabs(z);
        if (az > info.rho * (1.0 + eps))
            throw std::domain_error("fox_wright: |z| exceeds radius rho at Delta = -1");
        if (std::fabs(az - info.rho) <= eps * std::max(1.0, info.rho) && !(info.mu > 0.5))
            throw std::domain_error(
                "fox_wright: boundary |z| = rho requires mu > 1/2 (strict)");
    }
}

// Shared series engine: evaluates exp(log_scale) * Psi(z) with every term
// computed in log space and signs tracked explicitly, so linearly growing
// gamma arguments cannot overflow intermediate products.
inline series_result<double> fox_wright_sum(const fox_wright_params& params, double z,
                                            const truncation_policy& policy,
                                            double log_scale) {
    check_fox_wright_convergence(convergence_params(params), z);
    policy.validate();

    series_monitor mon(policy);
    kahan_sum<double> acc;
    series_result<double> out;
    const double log_abs_z = z == 0.0 ? 0.0 : std::log(std::fabs(z));
    const int sign_z = z < 0.0 ? -1 : 1;
    bool stopped = false;

    long k = 0;
    for (; k < policy.max_terms; ++k) {
        double lt = log_scale - std::lgamma(static_cast<double>(k) + 1.0);
        int sign = (sign_z < 0 && (k & 1)) ? -1 : 1;
        for (const auto& p : params.upper()) {
            const signed_log g = signed_log_gamma(p.offset + k * p.weight);
            lt += g.log_abs;
            sign *= g.sign;
        }
        for (const auto& p : params.lower()) {
            const signed_log g = signed_log_gamma(p.offset + k * p.weight);
            lt -= g.log_abs;
            sign *= g.sign;
        }
        if (z == 0.0) {
            if (k == 0) acc.add(sign * std::exp(lt));
            stopped = true;
            ++k;
            break;
        }
        lt += k * log_abs_z;
        if (lt > 709.0)
            throw overflow_at_term("fox_wright: term overflow at k=" + std::to_string(k), k);
        const double term = sign * std::exp(lt);
        acc.add(term);
        if (mon.note_term(std::fabs(term), std::fabs(acc.value())) && k >= 1) {
            stopped = true;
            ++k;
            break;
        }
    }
    out.value = acc.value();
    out.terms_used = k;
    finalize_result(out, mon, policy, stopped);
    if (z == 0.0) {
        out.tail_estimate = 0.0;
        out.converged = true;
    }
    return out;
}

} // namespace detail

// The Fox-Wright series at real z under the stated truncation policy.
inline series_result<double> fox_wright(const fox_wright_params& params, double z,
                                        const truncation_policy& policy = {}) {
    return detail::fox_wright_sum(params, z, policy, 0.0);
}

// exp(log_scale) * Psi(z); the scale is folded into each term's exponent so
// large normalizing gammas never materialize.
inline series_result<double> fox_wright_scaled(const fox_wright_params& params, double z,
                                               const truncation_policy& policy,
                                               double log_scale) {
    return detail::fox_wright_sum(params, z, policy, log_scale);
}

// Normalized form: (1/Gamma(sigma)) * Psi with (sigma, 1) prepended upstairs.
inline series_result<double> fox_wright_normalized(double sigma,
                                                   const fox_wright_params& params,
                                                   double z,
                                                   const truncation_policy& policy = {}) {
    if (!(sigma > 0.0))
        throw std::domain_error("fox_wright_normalized: sigma must be positive");
    std::vector<param_pair> upper;
    upper.reserve(params.upper().size() + 1);
    upper.push_back({sigma, 1.0});
    upper.insert(upper.end(), params.upper().begin(), params.upper().end());
    fox_wright_params combined(std::move(upper), params.lower());
    return detail::fox_wright_sum(combined, z, policy, -std::lgamma(sigma));
}

// Generalized hypergeometric pFq by the Pochhammer-ratio recurrence.
inline series_result<double> pfq(const std::vector<double>& upper,
                                 const std::vector<double>& lower, double z,
                                 const truncation_policy& policy = {}) {
    policy.validate();
    for (double b : lower)
        if (detail::is_nonpositive_integer(b))
            throw std::domain_error("pfq: lower parameter at a nonpositive integer");
    bool terminating = false;
    for (double a : upper)
        if (detail::is_nonpositive_integer(a)) terminating = true;
    const std::size_t p = upper.size(), q = lower.size();
    if (!terminating) {
        if (p > q + 1)
            throw std::domain_error("pfq: divergent for p > q+1");
        if (p == q + 1 && !(std::fabs(z) < 1.0))
            throw std::domain_error("pfq: |z| < 1 required for p = q+1");
    }

    series_monitor mon(policy);
    kahan_sum<double> acc;
    series_result<double> out;
    double term = 1.0;
    bool stopped = false;
    long k = 0;
    for (; k < policy.max_terms; ++k) {
        acc.add(term);
        if (mon.note_term(std::fabs(term), std::fabs(acc.value())) && k >= 1) {
            stopped = true;
            ++k;
            break;
        }
        double factor = z / static_cast<double>(k + 1);
        for (double a : upper) factor *= a + static_cast<double>(k);
        for (double b : lower) factor /= b + static_cast<double>(k);
        term *= factor;
        if (term == 0.0) { // terminating numerator
            stopped = true;
            ++k;
            break;
        }
        if (!std::isfinite(term))
            throw overflow_at_term("pfq: term overflow at k=" + std::to_string(k + 1), k + 1);
    }
    out.value = acc.value();
    out.terms_used = k;
    finalize_result(out, mon, policy, stopped);
    if (term == 0.0) {
        out.tail_estimate = 0.0;
        out.converged = true;
    }
    return out;
}

} // namespace foxwright

#endif
