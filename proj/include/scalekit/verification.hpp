#pragma once

// Cross-validation battery tying the closed forms to the quadrature oracle:
// population g and J recomputed from their defining integrals over a wide
// parameter grid, the mixture building-block integrals checked term by
// term, power-form normalization/antiderivative identities, and influence
// functions integrated against their densities. The CLI `verify` subcommand
// and the acceptance runner both execute this battery.

#include <cstddef>
#include <string>
#include <vector>

namespace scalekit {

enum class VerifyScope { Quick, Full };

struct VerifyCheck {
    std::string name;      // what was compared, e.g. "g(nm:3,0.008)"
    double expected = 0.0; // closed-form / identity value
    double actual = 0.0;   // quadrature value
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    std::size_t failures = 0;
    // Distinct distribution instances whose g and J were both re-derived by
    // quadrature (the breadth measure of the battery).
    std::size_t gj_combinations = 0;
    bool all_passed() const { return failures == 0; }
};

VerifyReport run_verification(VerifyScope scope);

} // namespace scalekit
