#pragma once

#include <stdexcept>
#include <string>

namespace scalekit {

// Invalid input: bad distribution parameters, samples too short, probabilities
// outside (0,1), malformed flag values. The CLI maps this to exit code 3.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to reach its requested tolerance. Carries the
// best available estimate so a caller can decide whether to accept it anyway.
// The CLI maps this to exit code 4.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}

    double best_estimate;
    double error_estimate;
};

} // namespace scalekit
