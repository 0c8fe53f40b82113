#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bellfield {

/// One end-to-end verification criterion: a named pass/fail check with a
/// short numeric summary.  Results are deterministic for a given seed.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full deterministic verification suite (criteria 1 through 8).
// The ninth criterion, byte-identical output across repeated runs, has to
// be checked from outside a single process.
std::vector<CriterionResult> run_verification(std::uint64_t seed);

}  // namespace bellfield
