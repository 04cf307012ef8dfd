#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace alphavortex::app::verify {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail; // measured value vs threshold
};

struct Options {
    std::uint64_t seed = 0;
    // Negative control: flips the sign of the closed-form gamma inside the
    // kernel comparisons so the suite must report failures.
    bool tamper = false;
    int threads = 1;
};

std::vector<Check> suite_kernels(const Options& opts);
std::vector<Check> suite_conservation(const Options& opts);
std::vector<Check> suite_decay(const Options& opts);
std::vector<Check> suite_tail(const Options& opts);

/// Dispatch by suite name; throws std::invalid_argument on unknown names.
std::vector<Check> run_suite(const std::string& name, const Options& opts);
std::vector<std::string> suite_names();

/// One PASS/FAIL line per check with the measured values; returns 0 iff all
/// checks passed.
int report(const std::vector<Check>& checks, std::ostream& out);

} // namespace alphavortex::app::verify
