#pragma once

#include <string>
#include <vector>

namespace rydsim {

// One verification item: an acceptance-style check with a hard pass/fail
// verdict, plus any warnings (known reference-table discrepancies are
// reported as warnings with the computed values).
struct VerifyItem {
    std::string name;
    bool passed = false;
    std::string detail;
    std::vector<std::string> warnings;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<VerifyItem> items;
    bool all_passed() const;
    std::string to_text() const;  // one line per item + warnings
    std::string to_json() const;
};

// Runs the full criteria suite (reference eigenvalue regression,
// eigenvector regression, dynamics equivalences, Hamiltonian identity,
// blockade-limit convergence, spectroscopy regressions, noise-resolution
// check, determinism).  `quick` skips the multi-seed noise criterion.
VerifyReport run_verification(bool quick = false);

}  // namespace rydsim
