#ifndef REGLAB_ERRORS_HPP
#define REGLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reglab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : error {
    parse_error(const std::string& msg, std::size_t offset)
        : error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

struct zero_denominator_error : error {
    zero_denominator_error() : error("not a rational function: zero denominator") {}
};

// Field extension failures carry the degree that would have been needed.
struct field_cap_error : error {
    field_cap_error(const std::string& msg, int needed)
        : error(msg), needed_degree(needed) {}
    int needed_degree;
};

struct reducible_minpoly_error : error {
    using error::error;
};

struct ambiguous_interval_error : error {
    using error::error;
};

// The zero set of a denominator turned out to contain a curve.
struct zero_set_not_finite_error : error {
    zero_set_not_finite_error(const std::string& msg, std::string witness)
        : error(msg), witness(std::move(witness)) {}
    std::string witness;
};

struct avoidance_error : error {
    using error::error;
};

} // namespace reglab

#endif
