#ifndef CARDGUESS_ERRORS_HPP
#define CARDGUESS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cardguess {

// Thrown when a computation would exceed a configured resource cap
// (DP state count, exact-sum length, ...). Distinct from invalid input so
// callers can degrade gracefully instead of aborting a whole grid.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cardguess

#endif
