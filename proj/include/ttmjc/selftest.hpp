// selftest.hpp — Runs every module invariant suite at its default tolerance,
// printing one [PASS]/[FAIL] line per invariant.

#pragma once

#include <iosfwd>

namespace ttmjc::selftest {

struct Options {
    // Debug hook: offset added to the closed-form Ec samples inside the
    // map-consistency suite. Any visible perturbation must trip the suite.
    double perturb_ec = 0.0;
};

/// Returns the number of failed invariants (0 on a healthy build).
int run(std::ostream& out, const Options& options = {});

} // namespace ttmjc::selftest
