#pragma once

#include <stdexcept>
#include <string>

namespace drb {

// Caller passed a value outside an operation's precondition.
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// Input size exceeds a documented exhaustive-enumeration cap.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Root bracketing failed; the constrained problem has no attainable solution.
class no_solution_error : public std::runtime_error {
public:
    explicit no_solution_error(const std::string& what) : std::runtime_error(what) {}
};

// The distortion weight is neither non-decreasing nor non-negative.
class unsupported_distortion : public std::runtime_error {
public:
    explicit unsupported_distortion(const std::string& what) : std::runtime_error(what) {}
};

// Witness construction: the linear part vanishes, so the image set degenerates.
class no_witness_error : public std::runtime_error {
public:
    explicit no_witness_error(const std::string& what) : std::runtime_error(what) {}
};

// Witness construction: requested targets exceed the transport budget.
class infeasible_target_error : public std::runtime_error {
public:
    explicit infeasible_target_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check (ordering, feasibility) failed.
class internal_consistency_error : public std::logic_error {
public:
    explicit internal_consistency_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace drb
