#ifndef FOXWRIGHT_SUMMATION_HPP
#define FOXWRIGHT_SUMMATION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace foxwright {

// Kahan-Neumaier compensated accumulator.  Works for double and for
// std::complex<double> (addition is componentwise).
template <class T>
class kahan_sum {
public:
    void add(const T& term) {
        const T t = sum_ + term;
        if (magnitude(sum_) >= magnitude(term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
    }

    T value() const { return sum_ + comp_; }

private:
    static double magnitude(double x) { return std::fabs(x); }
    static double magnitude(const std::complex<double>& x) { return std::abs(x); }

    T sum_{};
    T comp_{};
};

// Stopping rule for truncated series: stop once `consecutive_small`
// successive terms satisfy |term| <= rel_tol * |partial sum|, never
// exceeding max_terms.
struct truncation_policy {
    double rel_tol = 1e-14;
    int consecutive_small = 3;
    long max_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
            throw std::domain_error("truncation_policy: rel_tol must lie in (0,1)");
        if (consecutive_small < 1)
            throw std::domain_error("truncation_policy: consecutive_small must be >= 1");
        if (max_terms < consecutive_small)
            throw std::domain_error("truncation_policy: max_terms must be >= consecutive_small");
    }
};

// Outcome of a truncated series evaluation.
template <class T>
struct series_result {
    T value{};
    long terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
};

namespace detail {

// Tracks the stopping rule and the geometric tail extrapolation
// |t_K| * r / (1 - r) with r the last observed term ratio.
class series_monitor {
public:
    explicit series_monitor(const truncation_policy& p) : policy_(p) { p.validate(); }

    // Feed |term| and |partial sum| after adding term k; returns true when
    // the stopping rule fires.
    bool note_term(double abs_term, double abs_sum) {
        if (prev_abs_term_ > 0.0 && abs_term > 0.0)
            last_ratio_ = abs_term / prev_abs_term_;
        prev_abs_term_ = abs_term;
        last_abs_term_ = abs_term;
        const double floor_scale = 1e-300;
        if (abs_term <= policy_.rel_tol * std::max(abs_sum, floor_scale))
            ++small_run_;
        else
            small_run_ = 0;
        return small_run_ >= policy_.consecutive_small;
    }

    // Geometric extrapolation; valid only for ratio < 1.
    double tail_estimate() const {
        if (last_ratio_ > 0.0 && last_ratio_ < 1.0)
            return last_abs_term_ * last_ratio_ / (1.0 - last_ratio_);
        return last_abs_term_;
    }

    bool ratio_contracting() const { return last_ratio_ < 1.0; }

private:
    truncation_policy policy_;
    int small_run_ = 0;
    double prev_abs_term_ = 0.0;
    double last_abs_term_ = 0.0;
    double last_ratio_ = 0.0;
};

template <class T>
void finalize_result(series_result<T>& r, const series_monitor& mon,
                     const truncation_policy& policy, bool stopped_by_rule) {
    r.tail_estimate = mon.tail_estimate();
    const double scale = std::max(1.0, std::abs(r.value));
    r.converged = stopped_by_rule && mon.ratio_contracting() &&
                  r.tail_estimate <= policy.rel_tol * scale;
}

} // namespace detail

} // namespace foxwright

#endif
