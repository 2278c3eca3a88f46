#ifndef FRTM_ERRORS_HPP
#define FRTM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frtm {

/** Thrown when an exponent alpha*u^2 would exceed the IEEE double range. */
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Thrown when a grid cannot resolve the requested feature (plateau, peak). */
struct resolution_error : std::runtime_error {
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace frtm

#endif
