#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drb {

struct VerifyAssertion {
    std::string name;
    bool passed;
    double detail; // worst observed discrepancy (or relevant magnitude)
};

struct VerifyResult {
    std::string suite;
    std::vector<VerifyAssertion> assertions;

    bool all_passed() const;
};

/// Known suites: isotonic, separability, inclusion, oracle-worstcase, table1.
/// `scale` multiplies the default instance counts (1 = the documented full
/// battery); the suites never weaken tolerances, only counts.
VerifyResult run_verify_suite(const std::string& suite, std::uint64_t seed,
                              double scale = 1.0);

std::vector<std::string> verify_suite_names();

} // namespace drb
