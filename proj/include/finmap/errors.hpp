#ifndef FINMAP_ERRORS_HPP
#define FINMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace finmap {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by retract() when 2^S ∩ W is not totally ordered by inclusion.
// Carries the offending pair so callers can archive it as evidence.
struct TotalOrderViolation : std::runtime_error {
    std::string first, second;
    TotalOrderViolation(std::string a, std::string b)
        : std::runtime_error("2^S ∩ W is not totally ordered; incomparable pair: " + a + "  |  " + b),
          first(std::move(a)), second(std::move(b)) {}
};

// Raised by select_bijection when the rectangular set contains no bijection.
struct NoBijection : std::runtime_error {
    explicit NoBijection(const std::string& msg) : std::runtime_error("no bijection: " + msg) {}
};

// Raised by decompose_moves when an event cannot be realized as a
// sequence of moves with automorphism intermediates.
struct ConstructionFailure : std::runtime_error {
    explicit ConstructionFailure(const std::string& msg) : std::runtime_error("construction failure: " + msg) {}
};

struct ResolutionExhausted : std::runtime_error {
    explicit ResolutionExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidSample : std::runtime_error {
    explicit InvalidSample(const std::string& msg) : std::runtime_error("invalid sample: " + msg) {}
};

struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace finmap

#endif
