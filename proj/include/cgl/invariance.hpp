#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgl/graph.hpp"
#include "cgl/operators.hpp"
#include "cgl/random.hpp"
#include "cgl/spectral.hpp"

namespace cgl {

struct SuiteCheck {
    std::string theorem;   // short identifier, e.g. "covariance", "signature"
    std::string subject;   // family or character the check ran on
    int trial = 0;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    int trials = 0;
    double zero_tol = kDefaultZeroTol;
    std::vector<SuiteCheck> checks;

    bool all_passed() const;
    // theorem -> (passed, total)
    std::vector<std::pair<std::string, std::pair<int, int>>> tally() const;
};

struct SuiteOptions {
    int trials = 5;
    double factor_amplitude = 1.0;
    std::uint64_t seed = kDefaultSeed;
    double zero_tol = kDefaultZeroTol;
    bool polynomials = true;  // immanant/pfaffian scaling when |V| <= 8
};

// Every operator family evaluated at w and at w~ = e^{u} w for `trials`
// seeded factors u: covariance residuals (with the vertex Laplacian as a
// negative control), signature, kernel dimension, sign of lambda_1, rank,
// kernel transport with nodal structure and Psi, and the immanant and
// Pfaffian scaling laws.
SuiteReport run_invariance_suite(const Graph& g, const WeightFunction& w, const std::vector<int>& F,
                                 const SuiteOptions& options = {});

}  // namespace cgl
