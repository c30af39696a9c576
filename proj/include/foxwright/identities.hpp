#ifndef FOXWRIGHT_IDENTITIES_HPP
#define FOXWRIGHT_IDENTITIES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "foxwright/errors.hpp"
#include "foxwright/fox_wright.hpp"
#include "foxwright/gamma.hpp"
#include "foxwright/mathieu.hpp"
#include "foxwright/quadrature.hpp"
#include "foxwright/summation.hpp"
#include "foxwright/zeta.hpp"

namespace foxwright {

using param_point = std::map<std::string, double>;

struct tolerance_pair {
    double abs;
    double rel;
};

// Two-sided Luke bound data: psi00 = prod Gamma(a_i)/prod Gamma(b_j) and
// psi01 = prod Gamma(a_i + A_i)/prod Gamma(b_j + B_j).
struct luke_bounds {
    double psi00;
    double psi01;

    static luke_bounds from_params(const fox_wright_params& p) {
        double l0 = 0.0, l1 = 0.0;
        for (const auto& u : p.upper()) {
            l0 += log_gamma(u.offset);
            l1 += log_gamma(u.offset + u.weight);
        }
        for (const auto& l : p.lower()) {
            l0 -= log_gamma(l.offset);
            l1 -= log_gamma(l.offset + l.weight);
        }
        return {std::exp(l0), std::exp(l1)};
    }
};

enum class identity_kind { equality, inequality_chain, double_series };

struct identity_report {
    std::string id;
    param_point point;
    std::complex<double> lhs{};
    std::complex<double> rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
    std::string diagnostics;
};

struct chain_link {
    std::string name;
    double lo;
    double hi;
};

struct harness_config {
    truncation_policy policy{};
    quadrature_spec quad{};
    std::optional<double> override_abs;
    std::optional<double> override_rel;
};

namespace detail {

inline identity_report make_equality_report(std::string id, param_point point,
                                            std::complex<double> lhs,
                                            std::complex<double> rhs,
                                            const tolerance_pair& tol,
                                            std::string diagnostics = {}) {
    identity_report r;
    r.id = std::move(id);
    r.point = std::move(point);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.pass = r.abs_err <= tol.abs || r.rel_err <= tol.rel;
    r.diagnostics = std::move(diagnostics);
    return r;
}

inline identity_report make_chain_report(std::string id, param_point point,
                                         const std::vector<chain_link>& links,
                                         const tolerance_pair& tol,
                                         std::string diagnostics = {}) {
    identity_report r;
    r.id = std::move(id);
    r.point = std::move(point);
    double min_slack = std::numeric_limits<double>::infinity();
    const chain_link* worst = nullptr;
    std::ostringstream oss;
    for (const auto& lk : links) {
        const double slack = lk.hi - lk.lo;
        oss << lk.name << " slack=" << slack << "; ";
        if (slack < min_slack) {
            min_slack = slack;
            worst = &lk;
        }
    }
    if (worst) {
        r.lhs = worst->lo;
        r.rhs = worst->hi;
    }
    r.abs_err = std::max(0.0, -min_slack);
    r.rel_err = r.abs_err / std::max(1.0, worst ? std::fabs(worst->hi) : 1.0);
    r.pass = min_slack >= -tol.abs;
    r.diagnostics = oss.str() + diagnostics;
    return r;
}

// Adaptive outer sum over k of complex-valued terms; stops after
// `run` consecutive terms below rel * |sum|.
template <class TermFn>
std::complex<double> outer_sum(TermFn&& term_fn, double rel, long cap, int run = 3,
                               long* used = nullptr) {
    kahan_sum<std::complex<double>> acc;
    int small = 0;
    long k = 0;
    for (; k < cap; ++k) {
        const std::complex<double> term = term_fn(k);
        acc.add(term);
        const double scale = std::max(std::abs(acc.value()), 1e-300);
        if (std::abs(term) <= rel * scale) {
            if (++small >= run && k >= 1) {
                ++k;
                break;
            }
        } else {
            small = 0;
        }
    }
    if (used) *used = k;
    return acc.value();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Identity evaluators.  Each returns a self-contained report; family default
// tolerances follow the harness policy (quadrature-backed 1e-7, series vs
// closed form 1e-9, inequality slack 1e-10).
// ---------------------------------------------------------------------------

// Double sum  sum_{k,n} Gamma(l+k) Gamma(alpha+(k+n)A) / Gamma(beta+(k+n)A)
//             * z^n t^k / (n! k!)
// against Gamma(l) L_1[ xi^{alpha/A-1} (1-xi^{1/A})^{beta-alpha-1}
//                       (1-t xi)^{-l} / (A Gamma(beta-alpha)) ](-z).
// The printed corollary writes the kernel factor as (1-xi)^{beta-alpha-1},
// which matches the representing measure only at A = 1; the kernel form used
// here is the one the derivation itself produces, valid for every A.
inline identity_report check_thm1_corollary(double A, double alpha, double beta,
                                            double lambda, double z, double t,
                                            [[maybe_unused]] const truncation_policy& policy = {},
                                            const quadrature_spec& quad = {},
                                            tolerance_pair tol = {1e-12, 1e-7}) {
    if (!(beta > alpha) || !(alpha >= A) || !(A > 0.0))
        throw std::domain_error("check_thm1_corollary: need beta > alpha >= A > 0");
    if (!(std::fabs(t) < 1.0) || !(lambda > 0.0))
        throw std::domain_error("check_thm1_corollary: need |t| < 1 and lambda > 0");

    const double log_abs_t = t == 0.0 ? 0.0 : std::log(std::fabs(t));
    const double log_abs_z = z == 0.0 ? 0.0 : std::log(std::fabs(z));
    kahan_sum<double> total;
    long outer_used = 0;
    int outer_small = 0;
    for (long k = 0; k < 2000; ++k) {
        kahan_sum<double> inner;
        int inner_small = 0;
        for (long n = 0; n < 4000; ++n) {
            double lt = std::lgamma(lambda + k) +
                        std::lgamma(alpha + (k + n) * A) -
                        std::lgamma(beta + (k + n) * A) -
                        std::lgamma(k + 1.0) - std::lgamma(n + 1.0);
            if (t != 0.0) lt += k * log_abs_t;
            if (z != 0.0) lt += n * log_abs_z;
            int sign = 1;
            if (t < 0.0 && (k & 1)) sign = -sign;
            if (z < 0.0 && (n & 1)) sign = -sign;
            const double term = sign * std::exp(lt);
            inner.add(term);
            const double sc = std::max(std::fabs(inner.value()), 1e-300);
            if (std::fabs(term) <= 1e-16 * sc) {
                if (++inner_small >= 3 && n >= 1) break;
            } else {
                inner_small = 0;
            }
            if (z == 0.0) break;
        }
        total.add(inner.value());
        const double sc = std::max(std::fabs(total.value()), 1e-300);
        if (std::fabs(inner.value()) <= 1e-15 * sc) {
            if (++outer_small >= 3 && k >= 1) {
                outer_used = k + 1;
                break;
            }
        } else {
            outer_small = 0;
        }
        outer_used = k + 1;
        if (t == 0.0) break;
    }
    const double lhs = total.value();

    const kernel_pq11 kern(A, alpha, beta);
    quadrature_spec qs = quad;
    qs.left_exponent = alpha / A - 1.0;
    qs.right_exponent = beta - alpha - 1.0;
    const double integral = detail::tanh_sinh<double>(
        [&](double xi, double, double dhi) {
            return std::exp(z * xi) * detail::h_kernel_dist(kern, xi, dhi) / xi *
                   std::pow(1.0 - t * xi, -lambda);
        },
        0.0, 1.0, qs);
    const double rhs = std::exp(std::lgamma(lambda)) * integral;

    param_point pt{{"A", A},      {"alpha", alpha}, {"beta", beta},
                   {"lambda", lambda}, {"z", z},    {"t", t}};
    std::ostringstream diag;
    diag << "outer_terms=" << outer_used;
    return detail::make_equality_report("thm1-corollary-p1q1", std::move(pt), lhs, rhs,
                                        tol, diag.str());
}

// Five-expression chain combining the generating-function sandwich with the
// Luke-type bounds, in the p = q = 1 regime of (H1):
//   L_lower <= Psi'(t)/1 <= GF(z,t) <= e^{rho z} Psi'(t) <= e^{rho z} L_upper,
// where Psi' is the sigma-normalized function at argument t (the proof runs
// through sigma = lambda) and rho = 1 for equal weights.
inline identity_report check_thm1_inequalities(double A, double alpha, double beta,
                                               double lambda, double sigma, double z,
                                               double t,
                                               const truncation_policy& policy = {},
                                               [[maybe_unused]] const quadrature_spec& quad = {},
                                               tolerance_pair tol = {1e-10, 0.0}) {
    if (!(alpha / A >= 1.0) || !(beta > alpha))
        throw std::domain_error("check_thm1_inequalities: (H1) needs gamma >= 1, mu > 0");
    if (!(z > 0.0) || !(t > 0.0) || !(t < 1.0))
        throw std::domain_error("check_thm1_inequalities: need z > 0, t in (0,1)");
    const fox_wright_params base({{alpha, A}}, {{beta, A}});
    const luke_bounds lb = luke_bounds::from_params(base);

    const double e1 = lb.psi00 / std::pow(1.0 - (lb.psi01 / lb.psi00) * t, lambda);
    const double e2 = fox_wright_normalized(sigma, base, t, policy).value;
    double ck = 1.0, tk = 1.0;
    kahan_sum<double> gf;
    for (long k = 0; k < 2000; ++k) {
        const double inner = fox_wright(base.shifted(k), z, policy).value;
        const double term = ck * inner * tk;
        gf.add(term);
        if (std::fabs(term) <= 1e-15 * std::max(std::fabs(gf.value()), 1e-300) && k >= 2)
            break;
        ck *= (lambda + k) / (k + 1.0);
        tk *= t;
    }
    const double e3 = gf.value();
    const double e4 = std::exp(z) * e2; // rho = 1
    const double e5 =
        std::exp(z) * (lb.psi00 - lb.psi01 * (1.0 - std::pow(1.0 - t, -lambda)));

    std::vector<chain_link> links{{"luke-lower<=normalized", e1, e2},
                                  {"normalized<=gf", e2, e3},
                                  {"gf<=exp*normalized", e3, e4},
                                  {"exp*normalized<=luke-upper", e4, e5}};
    param_point pt{{"A", A},   {"alpha", alpha}, {"beta", beta}, {"lambda", lambda},
                   {"sigma", sigma}, {"z", z},   {"t", t}};
    return detail::make_chain_report("thm1-inequalities", std::move(pt), links, tol);
}

// Luke two-sided bounds on the normalized function at a negative argument.
inline identity_report check_luke_bounds(double A, double alpha, double beta,
                                         double lambda, double z,
                                         const truncation_policy& policy = {},
                                         tolerance_pair tol = {1e-10, 0.0}) {
    if (!(z > 0.0) || !(z < 1.0))
        throw std::domain_error("check_luke_bounds: need z in (0,1)");
    const fox_wright_params base({{alpha, A}}, {{beta, A}});
    const luke_bounds lb = luke_bounds::from_params(base);
    const double mid = fox_wright_normalized(lambda, base, -z, policy).value;
    const double lower = lb.psi00 / std::pow(1.0 + (lb.psi01 / lb.psi00) * z, lambda);
    const double upper =
        lb.psi00 - lb.psi01 * (1.0 - std::pow(1.0 + z, -lambda)); // rho = 1
    std::vector<chain_link> links{{"luke-lower<=psi", lower, mid},
                                  {"psi<=luke-upper", mid, upper}};
    param_point pt{{"A", A}, {"alpha", alpha}, {"beta", beta}, {"lambda", lambda},
                   {"z", z}};
    return detail::make_chain_report("eq-2.9-luke", std::move(pt), links, tol);
}

// Shifted generating-function theorems through their proof-form integral:
//   sum_k C(l+k-1,k) PsiNorm_{l+k}[(alpha+tau A, A); (beta+tau A, A) | 1-t] t^k
//     = (1/(1-t))^l int_0^1 xi^{tau-1} (1-xi)^{-l} H(xi) dxi.
inline identity_report check_thm2_thm3_integral(double lambda, double tau, double t,
                                                const kernel_pq11& kern,
                                                const truncation_policy& policy = {},
                                                const quadrature_spec& quad = {},
                                                tolerance_pair tol = {1e-12, 1e-6}) {
    const fox_wright_params shifted_base(
        {{kern.alpha + tau * kern.A, kern.A}}, {{kern.beta + tau * kern.A, kern.A}});
    truncation_policy inner = policy;
    inner.rel_tol = 1e-15;
    inner.max_terms = 40000;

    double ck = 1.0, tk = 1.0;
    kahan_sum<double> acc;
    long outer_used = 0;
    int small = 0;
    for (long k = 0; k < 4000; ++k) {
        const double v = fox_wright_normalized(lambda + k, shifted_base, 1.0 - t, inner).value;
        const double term = ck * v * tk;
        acc.add(term);
        outer_used = k + 1;
        const double sc = std::max(std::fabs(acc.value()), 1e-300);
        if (std::fabs(term) <= 1e-10 * sc) {
            if (++small >= 3 && k >= 1) break;
        } else {
            small = 0;
        }
        ck *= (lambda + k) / (k + 1.0);
        tk *= t;
    }
    const double lhs = acc.value();
    const fox_wright_params plain({{kern.alpha, kern.A}}, {{kern.beta, kern.A}});
    const double rhs = theorem2_integral_rhs(plain, lambda, tau, t, quad);

    param_point pt{{"A", kern.A}, {"alpha", kern.alpha}, {"beta", kern.beta},
                   {"lambda", lambda}, {"tau", tau},      {"t", t}};
    std::ostringstream diag;
    diag << "outer_terms=" << outer_used;
    return detail::make_equality_report(tau == 0.0 ? "thm2-proof-integral"
                                                   : "thm3-proof-integral",
                                        std::move(pt), lhs, rhs, tol, diag.str());
}

// Generating function with a plain +k shift on the leading pair:
//   sum_k Psi[(l+k, A), rest_u; (l, A), rest_l | z] t^k / k!
//     = (1-t)^{-l} Psi[rest_u; rest_l | z (1-t)^{-A}].
inline identity_report check_thm4_gf(const fox_wright_params& params, double z, double t,
                                     const truncation_policy& policy = {},
                                     tolerance_pair tol = {1e-12, 1e-9},
                                     std::string id = "thm4-gf-2.29") {
    if (params.upper().empty() || params.lower().empty())
        throw std::domain_error("check_thm4_gf: leading pair required on both rows");
    const param_pair lead_u = params.upper()[0];
    const param_pair lead_l = params.lower()[0];
    if (std::fabs(lead_u.offset - lead_l.offset) > 1e-14 ||
        std::fabs(lead_u.weight - lead_l.weight) > 1e-14)
        throw std::domain_error("check_thm4_gf: leading pairs must match");
    const double lambda = lead_u.offset;
    const double A = lead_u.weight;
    if (!(lambda > 0.0) || !(std::fabs(t) < 1.0))
        throw std::domain_error("check_thm4_gf: need lambda > 0, |t| < 1");

    truncation_policy inner = policy;
    inner.rel_tol = 1e-15;

    kahan_sum<double> acc;
    double tk = 1.0;
    int small = 0;
    long used = 0;
    for (long k = 0; k < 2000; ++k) {
        std::vector<param_pair> up = params.upper();
        up[0].offset = lambda + k;
        const fox_wright_params pk(std::move(up), params.lower());
        const double scaled = fox_wright_scaled(pk, z, inner, -std::lgamma(lambda + k)).value;
        const double weight = std::exp(std::lgamma(lambda + k) - std::lgamma(k + 1.0));
        const double term = scaled * weight * tk;
        acc.add(term);
        used = k + 1;
        const double sc = std::max(std::fabs(acc.value()), 1e-300);
        if (std::fabs(term) <= 1e-13 * sc) {
            if (++small >= 3 && k >= 1) break;
        } else {
            small = 0;
        }
        tk *= t;
    }
    const double lhs = acc.value();

    std::vector<param_pair> rest_u(params.upper().begin() + 1, params.upper().end());
    std::vector<param_pair> rest_l(params.lower().begin() + 1, params.lower().end());
    const fox_wright_params rest(std::move(rest_u), std::move(rest_l));
    const double w = z * std::pow(1.0 - t, -A);
    const double rhs = std::pow(1.0 - t, -lambda) * fox_wright(rest, w, inner).value;

    param_point pt{{"lambda", lambda}, {"A", A}, {"z", z}, {"t", t}};
    std::ostringstream diag;
    diag << "outer_terms=" << used;
    return detail::make_equality_report(std::move(id), std::move(pt), lhs, rhs, tol,
                                        diag.str());
}

// Mathieu-type generating function:
//   sum_k Gamma(mu+k) S_{mu+k}^{(alpha, k alpha)}(r; {n^{1/alpha}}) t^k / k!
//     = 2 Gamma(mu) (1-t)^{-mu} zeta(mu, 1 + r^2/(1-t)).
inline identity_report check_mathieu_gf(double mu, double alpha, double r, double t,
                                        const truncation_policy& policy = {},
                                        const quadrature_spec& quad = {},
                                        tolerance_pair tol = {1e-12, 1e-8},
                                        std::string id = "thm-3.2-mathieu-gf") {
    if (!(mu > 1.0) || !(alpha > 0.0) || !(r > 0.0) || !(std::fabs(t) < 1.0))
        throw std::domain_error("check_mathieu_gf: need mu > 1, alpha > 0, r > 0, |t| < 1");
    truncation_policy inner = policy;
    inner.rel_tol = 1e-12;
    inner.max_terms = 200000;

    kahan_sum<double> acc;
    double tk = 1.0;
    int small = 0;
    long used = 0;
    for (long k = 0; k < 600; ++k) {
        const mathieu_spec sk(mu + k, alpha, k * alpha, r);
        const double s_val = mathieu_series(sk, inner, quad).value;
        const double weight = std::exp(std::lgamma(mu + k) - std::lgamma(k + 1.0));
        const double term = s_val * weight * tk;
        acc.add(term);
        used = k + 1;
        const double sc = std::max(std::fabs(acc.value()), 1e-300);
        if (std::fabs(term) <= 1e-12 * sc) {
            if (++small >= 3 && k >= 1) break;
        } else {
            small = 0;
        }
        tk *= t;
    }
    const double lhs = acc.value();
    const double rhs = 2.0 * std::exp(std::lgamma(mu)) * std::pow(1.0 - t, -mu) *
                       hurwitz_zeta(mu, 1.0 + r * r / (1.0 - t));
    param_point pt{{"mu", mu}, {"alpha", alpha}, {"r", r}, {"t", t}};
    std::ostringstream diag;
    diag << "outer_terms=" << used;
    return detail::make_equality_report(std::move(id), std::move(pt), lhs, rhs, tol,
                                        diag.str());
}

// Closed double series: sum_k sum_n C(mu+k-1,k) x_n^k / (1+mn)^mu with
// x_n = (m-1)n/(1+mn); the inner sum collapses to (1-x_n)^{-mu} per n, the
// outer sum is completed by a midpoint-integral tail.  Evaluates to
// (pi^2-6)/6 at mu=2, zeta(3)-1 at mu=3, (pi^4-90)/90 at mu=4.
inline identity_report check_double_series_pi(long m, double mu = 2.0,
                                              [[maybe_unused]] const truncation_policy& policy = {},
                                              const quadrature_spec& quad = {},
                                              tolerance_pair tol = {1e-9, 1e-9}) {
    if (m < 2)
        throw std::domain_error("check_double_series_pi: m >= 2 required");
    if (!(mu > 1.0))
        throw std::domain_error("check_double_series_pi: mu > 1 required");
    const double md = static_cast<double>(m);
    const auto term = [&](double n) {
        const double denom = 1.0 + md * n;
        const double x = (md - 1.0) * n / denom;
        return std::pow(1.0 - x, -mu) * std::pow(denom, -mu);
    };
    const long N = 3000;
    kahan_sum<double> acc;
    for (long n = 1; n <= N; ++n)
        acc.add(term(static_cast<double>(n)));
    const double edge = N + 0.5;
    quadrature_spec qs = quad;
    qs.left_exponent = mu - 2.0;
    const double tail_int = detail::tanh_sinh<double>(
        [&](double u, double, double) {
            const double x = edge / u;
            return term(x) * edge / (u * u);
        },
        0.0, 1.0, qs);
    const double h = 0.5;
    const double tprime = (term(edge + h) - term(edge - h)) / (2.0 * h);
    const double lhs = acc.value() + tail_int + tprime / 24.0;

    double rhs;
    if (mu == 2.0)
        rhs = (M_PI * M_PI - 6.0) / 6.0;
    else if (mu == 4.0)
        rhs = (M_PI * M_PI * M_PI * M_PI - 90.0) / 90.0;
    else
        rhs = riemann_zeta(mu) - 1.0;

    param_point pt{{"m", static_cast<double>(m)}, {"mu", mu}};
    return detail::make_equality_report(
        mu == 2.0 ? "eq-3.5-m" + std::to_string(m)
                  : "eq-3.5-mu" + std::to_string(static_cast<long>(mu)),
        std::move(pt), lhs, rhs, tol);
}

// Extended Hurwitz-Lerch generating function:
//   sum_k Phi_{l1+k,...}(z,s,a) Gamma(l1+k) t^k / k!
//     = Gamma(l1) (1-t)^{-l1} Phi_reduced(z (1-t)^{-rho1}, s, a),
// where the reduced set drops the matching leading pair on both rows.
inline identity_report check_lerch_gf(const lerch_params& params, std::complex<double> z,
                                      double t, const truncation_policy& policy = {},
                                      tolerance_pair tol = {1e-12, 1e-8},
                                      std::string id = "thm-3.8-lerch-gf") {
    if (params.lambdas().empty() || params.mus().empty())
        throw std::domain_error("check_lerch_gf: leading pair required on both rows");
    const param_pair lead = params.lambdas()[0];
    const param_pair lead_mu = params.mus()[0];
    if (std::fabs(lead.offset - lead_mu.offset) > 1e-14 ||
        std::fabs(lead.weight - lead_mu.weight) > 1e-14)
        throw std::domain_error("check_lerch_gf: leading pairs must match");
    const double lambda1 = lead.offset;
    const double rho1 = lead.weight;
    if (!(lambda1 > 0.0) || !(std::fabs(t) < 1.0))
        throw std::domain_error("check_lerch_gf: need lambda1 > 0 and |t| < 1");

    truncation_policy inner = policy;
    inner.rel_tol = 1e-15;

    long used = 0;
    const std::complex<double> lhs = detail::outer_sum(
        [&](long k) {
            const auto pk = params.with_first_lambda_offset(lambda1 + k);
            const std::complex<double> phi = extended_lerch_phi(pk, z, inner).value;
            const double weight =
                std::exp(std::lgamma(lambda1 + k) - std::lgamma(k + 1.0));
            return phi * weight * std::pow(t, static_cast<double>(k));
        },
        1e-13, 500, 3, &used);

    std::vector<param_pair> ru(params.lambdas().begin() + 1, params.lambdas().end());
    std::vector<param_pair> rl(params.mus().begin() + 1, params.mus().end());
    const lerch_params reduced(std::move(ru), std::move(rl), params.s(), params.a());
    const std::complex<double> zr = z * std::pow(1.0 - t, -rho1);
    const std::complex<double> rhs = std::exp(std::lgamma(lambda1)) *
                                     std::pow(1.0 - t, -lambda1) *
                                     extended_lerch_phi(reduced, zr, inner).value;

    param_point pt{{"lambda1", lambda1}, {"rho1", rho1}, {"z_re", z.real()},
                   {"z_im", z.imag()},   {"s", params.s()}, {"a", params.a()},
                   {"t", t}};
    std::ostringstream diag;
    diag << "outer_terms=" << used;
    return detail::make_equality_report(std::move(id), std::move(pt), lhs, rhs, tol,
                                        diag.str());
}

// Unit-circle variant of the generating function with the Lipschitz-Lerch
// right-hand side.  The shifted members are evaluated through the integral
// representation (their defining series stop converging termwise at |z| = 1),
// which is exactly the route the derivation takes.
inline identity_report check_lerch_gf_integral(double lambda1, double xi, double s,
                                               double a, double t,
                                               const quadrature_spec& quad = {},
                                               tolerance_pair tol = {1e-12, 1e-8}) {
    if (!(t > -1.0) || !(t < 0.0))
        throw std::domain_error("check_lerch_gf_integral: t in (-1,0) required");
    const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * xi);
    long used = 0;
    const std::complex<double> lhs = detail::outer_sum(
        [&](long k) {
            const std::complex<double> phi =
                ext_lerch_shifted_integral(lambda1, k, z, s, a, quad);
            const double weight =
                std::exp(std::lgamma(lambda1 + k) - std::lgamma(k + 1.0));
            return phi * weight * std::pow(t, static_cast<double>(k));
        },
        1e-12, 200, 3, &used);
    const std::complex<double> rhs = std::exp(std::lgamma(lambda1)) *
                                     std::pow(1.0 - t, -lambda1) *
                                     lerch_phi(z, s, a);
    param_point pt{{"lambda1", lambda1}, {"xi", xi}, {"s", s}, {"a", a}, {"t", t}};
    std::ostringstream diag;
    diag << "outer_terms=" << used;
    return detail::make_equality_report("eq-3.10-lipschitz-gf", std::move(pt), lhs, rhs,
                                        tol, diag.str());
}

// Binomial-collapse double series
//   sum_k sum_n Gamma(n+k+1)/(n! k!) (1-t)^{n+1} z^n t^k / (n+a)^s = Phi(z,s,a).
// Interior z: full raw double sum (outer n, inner k by recurrence).  On the
// unit circle the inner cancellation exhausts double precision beyond small
// n, so the raw block covers n <= 40 and the analytically collapsed terms
// complete the tail.
inline identity_report check_lerch_double_series(std::complex<double> z, double s,
                                                 double a, double t,
                                                 [[maybe_unused]] const truncation_policy& policy = {},
                                                 tolerance_pair tol = {1e-12, 1e-9},
                                                 std::string id = "eq-3.11-double-series") {
    if (!(t > -1.0) || !(t < 0.0))
        throw std::domain_error("check_lerch_double_series: t in (-1,0) required");
    const double az = std::abs(z);
    const bool boundary = az >= 1.0 - 1e-14;
    const double log1mt = std::log(1.0 - t);

    const auto inner_scaled = [&](long n) {
        // (1-t)^{n+1} * sum_k C(n+k,k) t^k, summed raw.
        double u = std::exp((n + 1.0) * log1mt);
        kahan_sum<double> in;
        int small = 0;
        for (long k = 0; k < 200000; ++k) {
            in.add(u);
            const double sc = std::max(std::fabs(in.value()), 1e-300);
            if (std::fabs(u) <= 1e-17 * sc) {
                if (++small >= 3 && k >= 1) break;
            } else {
                small = 0;
            }
            u *= t * (n + k + 1.0) / (k + 1.0);
        }
        return in.value();
    };

    std::complex<double> lhs;
    std::string note;
    if (!boundary) {
        kahan_sum<std::complex<double>> acc;
        std::complex<double> zn{1.0};
        int small = 0;
        for (long n = 0; n < 100000; ++n) {
            const std::complex<double> term =
                inner_scaled(n) * zn * std::pow(n + a, -s);
            acc.add(term);
            const double sc = std::max(std::abs(acc.value()), 1e-300);
            if (std::abs(term) <= 1e-14 * sc) {
                if (++small >= 3 && n >= 1) break;
            } else {
                small = 0;
            }
            zn *= z;
        }
        lhs = acc.value();
        note = "raw double sum";
    } else {
        const long n_raw = 40;
        kahan_sum<std::complex<double>> acc;
        std::complex<double> zn{1.0};
        for (long n = 0; n <= n_raw; ++n) {
            acc.add((inner_scaled(n) - 1.0) * zn * std::pow(n + a, -s));
            zn *= z;
        }
        // raw-vs-collapsed residual over the raw block, plus the full
        // collapsed value; isolates the inner-sum identity numerically.
        lhs = acc.value() + lerch_phi(z, s, a);
        note = "hybrid: raw block n<=40 + collapsed tail";
    }
    const std::complex<double> rhs = lerch_phi(z, s, a);
    param_point pt{{"z_re", z.real()}, {"z_im", z.imag()}, {"s", s}, {"a", a}, {"t", t}};
    return detail::make_equality_report(std::move(id), std::move(pt), lhs, rhs, tol,
                                        note);
}

} // namespace foxwright

#include "foxwright/registry.hpp"

#endif
