#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "semrate/channel.hpp"
#include "semrate/distribution.hpp"
#include "semrate/solver.hpp"
#include "semrate/thermo.hpp"
#include "semrate/truth.hpp"

namespace semrate::io {

using json = nlohmann::json;

// Deterministic double formatting used by every CSV writer (%.17g).
std::string format_double(double v);

// --- CSV: distribution over a grid, columns "x,p" (header required) ---
Distribution read_distribution_csv(std::istream& in);
Distribution read_distribution_csv_file(const std::string& path);
void write_distribution_csv(std::ostream& out, const Distribution& dist);

// --- CSV: labeled tables, header "x,<label1>,...", one row per grid point ---
struct LabeledTable {
    Grid grid;
    LabelSet labels;
    Matrix values;
};
LabeledTable read_labeled_table_csv(std::istream& in);
LabeledTable read_labeled_table_csv_file(const std::string& path);
void write_labeled_table_csv(std::ostream& out, const Grid& grid, const LabelSet& labels,
                             const Matrix& values, const std::string& comment = "");

Channel channel_from_table(const LabeledTable& t);
SemanticChannel semantic_channel_from_table(const LabeledTable& t);
JointDistribution joint_from_table(const LabeledTable& t);

// --- TruthSpec JSON ---
// {"kind":"logistic_rise","center":18,"steepness":1.5}
// {"kind":"logistic_fall","center":18,"steepness":1.5}
// {"kind":"bump_complement_pow","mu":22,"sigma2":25,"power":2}
// {"kind":"table","values":[...]}
TruthSpec truth_spec_from_json(const json& j);
json truth_spec_to_json(const TruthSpec& spec);

// --- curve CSV: "s,rate_bits,constraint_value,iterations,converged" with the
// resolved configuration embedded in a leading comment line ---
void write_curve_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const json& config);

// --- result JSON: marginal, channel (row-major), rate, constraint, trace,
// plus the resolved configuration ---
json solver_result_to_json(const SolverResult& result, const json& config);

// --- ThermoSystem JSON: energies, degeneracies, temperatures, weights ---
ThermoSystem thermo_system_from_json(const json& j);
json thermo_system_to_json(const ThermoSystem& system);

// --- PGM (binary "P5", maxval 255) -> grey-level histogram over 0..255 ---
struct PgmHistogram {
    Distribution dist;        // normalized over grid 0..255
    std::size_t pixel_count;
    std::size_t width;
    std::size_t height;
};
PgmHistogram ingest_pgm(std::istream& in);
PgmHistogram ingest_pgm_file(const std::string& path);

}  // namespace semrate::io
