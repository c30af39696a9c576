#ifndef FOXWRIGHT_ERRORS_HPP
#define FOXWRIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace foxwright {

// Thrown when an adaptive scheme ran out of refinement budget before
// meeting its tolerance.  Carries the best value computed so far and the
// bound on its error, so callers can decide whether the result is usable.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// Series term exceeded the double range at a specific index.
class overflow_at_term : public std::overflow_error {
public:
    overflow_at_term(const std::string& what, long term_index)
        : std::overflow_error(what), term_index_(term_index) {}

    long term_index() const noexcept { return term_index_; }

private:
    long term_index_;
};

} // namespace foxwright

#endif
