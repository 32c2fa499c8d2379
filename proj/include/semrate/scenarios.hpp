#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "semrate/distribution.hpp"
#include "semrate/solver.hpp"
#include "semrate/truth.hpp"

namespace semrate {

struct Scenario {
    std::string name;
    Distribution prior;
    SemanticChannel semchan;
};

// Four age labels (non-adult, youth, adult, elder) over an integer age grid
// with a truncated half-Gaussian prior (sigma 37). The grid extent is a
// declared knob; 0..100 covers every truth-function transition.
Scenario build_example1(double grid_max = 100.0);

// Eight fuzzy grey-level classes over 0..255 with the same half-Gaussian
// prior: a falling logistic shoulder (center 2), six rounded power-3 bumps
// (mu 14..170), and a rising logistic shoulder (center 200, steepness 0.2).
Scenario build_example2();

struct TargetRow {
    std::string name;
    double computed = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool hard = false;            // structural subtest, grid-independent
    std::string provenance;       // "published" or "structural"
    std::string note;
};

struct ScenarioReport {
    std::string scenario;
    Variant variant{};
    double s = 0.0;
    SolverResult result;
    std::vector<TargetRow> rows;
    // Configuration echo (audit trail for unpublished knobs).
    double grid_max = 0.0;
    double tol = 0.0;
    std::size_t max_iter = 0;
    std::string label_indexing_note;  // example2's class layout resolution
    double runtime_seconds = 0.0;

    bool all_passed() const;
    bool hard_passed() const;
    std::string render_table() const;
};

struct ReproduceOptions {
    double tol = 1e-8;
    std::size_t max_iter = 50000;
    double grid_max = 100.0;  // example1 only
};

// Run a scenario under one constraint regime and compare against the
// reference targets. scenario is "example1" or "example2".
ScenarioReport reproduce(const std::string& scenario, Variant variant, double s,
                         const ReproduceOptions& options = {});

}  // namespace semrate
