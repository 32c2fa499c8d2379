#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semrate/io.hpp"
#include "semrate/kernel.hpp"
#include "semrate/maxent.hpp"
#include "semrate/measures.hpp"
#include "semrate/scenarios.hpp"
#include "semrate/solver.hpp"
#include "semrate/thermo.hpp"

using nlohmann::json;
using namespace semrate;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in, nullptr, true, true);  // allow // comments
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

// "a:b:n" or "a:b:n:geometric"
std::vector<double> parse_s_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("--s-grid expects a:b:n or a:b:n:geometric");
    double a, b;
    long n;
    try {
        a = std::stod(parts[0]);
        b = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (...) {
        throw ConfigError("--s-grid: bad number in '" + spec + "'");
    }
    if (n < 1) throw ConfigError("--s-grid: need at least one point");
    const bool geometric = parts.size() == 4;
    if (geometric && parts[3] != "geometric")
        throw ConfigError("--s-grid: unknown scale '" + parts[3] + "'");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) return {a};
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        if (geometric) {
            if (a == 0.0 || b == 0.0 || (a < 0) != (b < 0))
                throw ConfigError("--s-grid geometric endpoints must share a sign and be nonzero");
            out.push_back((a < 0 ? -1.0 : 1.0) *
                          std::exp(std::log(std::abs(a)) * (1 - t) + std::log(std::abs(b)) * t));
        } else {
            out.push_back(a + (b - a) * t);
        }
    }
    return out;
}

// ---- problem configuration -------------------------------------------------

struct ResolvedProblem {
    Distribution prior;
    LabelSet labels;
    std::optional<SemanticChannel> semchan;
    std::optional<DistortionMatrix> distortion;
    Variant variant;
    std::vector<double> s_values;  // one entry for solve, many for sweep
    double tol = 1e-8;
    std::size_t max_iter = 10000;
    json echo;  // resolved configuration embedded in outputs

    ResolvedProblem(Distribution p, LabelSet l)
        : prior(std::move(p)), labels(std::move(l)), variant(Variant::rd) {}

    ConstraintKernel kernel_at(double s) const {
        switch (variant) {
            case Variant::rd:
                if (distortion) return build_rd_kernel(*distortion, s);
                return build_rd_kernel(truth_to_distortion(*semchan), s);
            case Variant::rtheta:
                if (!semchan) return build_rtheta_kernel(dist_to_truth(), s);
                return build_rtheta_kernel(*semchan, s);
            case Variant::rg:
                if (!semchan) return build_rg_kernel(dist_to_truth(), prior, s);
                return build_rg_kernel(*semchan, prior, s);
        }
        throw ConfigError("unknown variant");
    }

private:
    SemanticChannel dist_to_truth() const {
        return distortion_to_truth(*distortion, prior.grid(), labels);
    }
};

struct CommonOverrides {
    std::string variant;
    std::optional<double> s;
    std::string s_grid;
    std::optional<double> tol;
    std::optional<long> max_iter;
    std::optional<double> grid_max;
};

Grid resolve_grid(const json& cfg, const CommonOverrides& ov) {
    if (!cfg.contains("grid")) throw ConfigError("config: missing 'grid'");
    const json& g = cfg["grid"];
    if (g.contains("points")) return Grid(g["points"].get<std::vector<double>>());
    const double min = g.at("min").get<double>();
    double max = g.at("max").get<double>();
    const double step = g.value("step", 1.0);
    if (ov.grid_max) max = *ov.grid_max;
    return Grid::regular(min, max, step);
}

Distribution resolve_prior(const json& cfg, const Grid& grid) {
    if (!cfg.contains("prior")) throw ConfigError("config: missing 'prior'");
    const json& p = cfg["prior"];
    if (p.contains("file")) {
        Distribution d = io::read_distribution_csv_file(p["file"].get<std::string>());
        if (!(d.grid() == grid))
            throw ConfigError("prior file grid does not match the configured grid");
        return d;
    }
    if (p.contains("truncated_gaussian")) {
        const double sigma = p["truncated_gaussian"].at("sigma").get<double>();
        if (!(sigma > 0.0)) throw ConfigError("prior: sigma must be positive");
        std::vector<double> w(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            w[i] = std::exp(-grid[i] * grid[i] / (2.0 * sigma * sigma));
        return Distribution(grid, ProbVector::normalized(std::move(w)));
    }
    if (p.contains("uniform") && p["uniform"].get<bool>())
        return Distribution(grid, ProbVector::uniform(grid.size()));
    if (p.contains("values")) return Distribution(grid, ProbVector(p["values"].get<std::vector<double>>()));
    throw ConfigError("config: prior must be one of file / truncated_gaussian / uniform / values");
}

ResolvedProblem resolve_problem(const json& cfg, const CommonOverrides& ov, bool want_sweep) {
    if (!cfg.contains("constraint")) throw ConfigError("config: missing 'constraint'");
    const json& c = cfg["constraint"];
    int sources = 0;
    for (const char* key : {"distortion_csv", "truth_specs", "truth_csv", "learn_from_joint"})
        sources += c.contains(key) ? 1 : 0;
    if (sources != 1)
        throw ConfigError("config: constraint needs exactly one of distortion_csv / truth_specs / "
                          "truth_csv / learn_from_joint (got " + std::to_string(sources) + ")");

    Grid grid = resolve_grid(cfg, ov);
    Distribution prior = resolve_prior(cfg, grid);

    std::optional<SemanticChannel> semchan;
    std::optional<DistortionMatrix> distortion;
    std::optional<LabelSet> labels;
    if (cfg.contains("labels")) labels = LabelSet(cfg["labels"].get<std::vector<std::string>>());

    auto check_table = [&](const io::LabeledTable& t, const char* what) {
        if (!(t.grid == grid))
            throw ConfigError(std::string(what) + ": grid column does not match the configured grid");
        if (labels && !(t.labels == *labels))
            throw ConfigError(std::string(what) + ": header labels do not match config labels");
    };

    if (c.contains("distortion_csv")) {
        const auto t = io::read_labeled_table_csv_file(c["distortion_csv"].get<std::string>());
        check_table(t, "distortion_csv");
        if (!labels) labels = t.labels;
        distortion = DistortionMatrix(t.values);
    } else if (c.contains("truth_csv")) {
        const auto t = io::read_labeled_table_csv_file(c["truth_csv"].get<std::string>());
        check_table(t, "truth_csv");
        if (!labels) labels = t.labels;
        semchan = SemanticChannel(grid, *labels, t.values);
    } else if (c.contains("truth_specs")) {
        std::vector<TruthSpec> specs;
        for (const auto& sj : c["truth_specs"]) specs.push_back(io::truth_spec_from_json(sj));
        if (!labels) labels = LabelSet::numbered(specs.size());
        semchan = SemanticChannel::from_specs(grid, *labels, specs);
    } else {
        const auto t = io::read_labeled_table_csv_file(c["learn_from_joint"].get<std::string>());
        check_table(t, "learn_from_joint");
        if (!labels) labels = t.labels;
        semchan = learn_truth_empirical(io::joint_from_table(t), grid, *labels);
    }

    ResolvedProblem prob(std::move(prior), std::move(*labels));
    prob.semchan = std::move(semchan);
    prob.distortion = std::move(distortion);

    const std::string variant_name =
        !ov.variant.empty() ? ov.variant : cfg.value("variant", std::string());
    if (variant_name.empty()) throw ConfigError("config: missing 'variant'");
    prob.variant = variant_from_string(variant_name);

    if (ov.s && !ov.s_grid.empty()) throw ConfigError("give either --s or --s-grid, not both");
    if (!ov.s_grid.empty())
        prob.s_values = parse_s_grid(ov.s_grid);
    else if (ov.s)
        prob.s_values = {*ov.s};
    else if (cfg.contains("s_grid")) {
        const json& sg = cfg["s_grid"];
        const std::string scale = sg.value("scale", "linear");
        std::string spec = std::to_string(sg.at("from").get<double>()) + ":" +
                           std::to_string(sg.at("to").get<double>()) + ":" +
                           std::to_string(sg.at("count").get<long>());
        if (scale == "geometric") spec += ":geometric";
        else if (scale != "linear") throw ConfigError("config: s_grid.scale must be linear or geometric");
        prob.s_values = parse_s_grid(spec);
    } else if (cfg.contains("s"))
        prob.s_values = {cfg["s"].get<double>()};
    else
        throw ConfigError("config: missing 's' (or 's_grid')");

    if (want_sweep && prob.s_values.size() < 1) throw ConfigError("sweep: empty s grid");
    if (!want_sweep && prob.s_values.size() != 1)
        throw ConfigError("solve: expected a single s, got an s grid (use the sweep subcommand)");

    for (double s : prob.s_values) {
        if (prob.variant == Variant::rd && s > 0.0)
            throw ConfigError("variant rd requires s <= 0 (got " + std::to_string(s) + ")");
        if (prob.variant != Variant::rd && s < 0.0)
            throw ConfigError("variant " + to_string(prob.variant) + " requires s >= 0 (got " +
                              std::to_string(s) + ")");
    }

    prob.tol = ov.tol ? *ov.tol : cfg.value("tol", 1e-8);
    if (!(prob.tol > 0.0)) throw ConfigError("tol must be positive");
    const long mi = ov.max_iter ? *ov.max_iter : cfg.value("max_iter", 10000L);
    if (mi < 1) throw ConfigError("max_iter must be at least 1");
    prob.max_iter = static_cast<std::size_t>(mi);

    prob.echo = cfg;
    prob.echo["resolved"] = {{"variant", to_string(prob.variant)},
                             {"s_values", prob.s_values},
                             {"tol", prob.tol},
                             {"max_iter", prob.max_iter},
                             {"grid_points", prob.prior.grid().size()},
                             {"labels", prob.labels.names()}};
    return prob;
}

// ---- subcommand runners ----------------------------------------------------

int run_solve(const std::string& config_path, const CommonOverrides& ov, const std::string& out_path,
              std::string channel_csv) {
    const ResolvedProblem prob = resolve_problem(load_json_file(config_path), ov, false);
    const double s = prob.s_values[0];
    const ConstraintKernel kernel = prob.kernel_at(s);
    SolveOptions options;
    options.tol = prob.tol;
    options.max_iter = prob.max_iter;
    const SolverResult result = mmi_iterate(prob.prior, kernel, options);

    write_text_file(out_path, io::solver_result_to_json(result, prob.echo).dump(2) + "\n");
    if (channel_csv.empty())
        channel_csv = out_path + ".channel.csv";
    std::ostringstream csv;
    io::write_labeled_table_csv(csv, prob.prior.grid(), prob.labels, result.channel.matrix(),
                                "config: " + prob.echo.dump());
    write_text_file(channel_csv, csv.str());

    std::cout << "variant=" << to_string(result.variant) << " s=" << io::format_double(s)
              << " rate_bits=" << io::format_double(result.rate_bits)
              << " constraint=" << io::format_double(result.constraint)
              << " iterations=" << result.iterations
              << " converged=" << (result.converged ? "true" : "false") << "\n";
    std::cout << "wrote " << out_path << " and " << channel_csv << "\n";
    if (!result.converged) {
        std::cerr << "solve: marginal still moving after " << result.iterations << " iterations\n";
        return 1;
    }
    return 0;
}

int run_sweep(const std::string& config_path, const CommonOverrides& ov, const std::string& out_path,
              unsigned jobs, bool cold_start) {
    const ResolvedProblem prob = resolve_problem(load_json_file(config_path), ov, true);
    SweepOptions options;
    options.solve.tol = prob.tol;
    options.solve.max_iter = prob.max_iter;
    options.warm_start = !cold_start;
    options.jobs = jobs;
    if (options.warm_start && jobs > 1)
        std::cerr << "sweep: warm starts chain between points, running sequentially"
                     " (pass --cold to parallelize)\n";
    json echo = prob.echo;
    echo["resolved"]["warm_start"] = options.warm_start;
    echo["resolved"]["jobs"] = jobs;

    const auto points = sweep_curve(
        prob.prior, [&](double s) { return prob.kernel_at(s); }, prob.s_values, options);

    std::ostringstream csv;
    io::write_curve_csv(csv, points, echo);
    write_text_file(out_path, csv.str());
    std::size_t failed = 0;
    for (const auto& p : points)
        if (!p.error.empty()) ++failed;
    std::cout << "wrote " << out_path << " (" << points.size() << " points, " << failed
              << " failed)\n";
    return 0;
}

int run_learn_truth(const std::string& joint_path, const std::string& out_path,
                    const std::string& normalization) {
    const auto t = io::read_labeled_table_csv_file(joint_path);
    TruthNormalization norm;
    if (normalization == "global")
        norm = TruthNormalization::global;
    else if (normalization == "per_label")
        norm = TruthNormalization::per_label;
    else
        throw ConfigError("--normalization must be global or per_label");
    const auto sc = learn_truth_empirical(io::joint_from_table(t), t.grid, t.labels, norm);
    const json config = {{"joint", joint_path}, {"normalization", normalization}};
    std::ostringstream csv;
    io::write_labeled_table_csv(csv, sc.grid(), sc.labels(), sc.truth(),
                                "config: " + config.dump());
    write_text_file(out_path, csv.str());
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_maxent(const std::string& config_path, const std::string& out_path) {
    const json cfg = load_json_file(config_path);
    CommonOverrides none;
    Grid grid = resolve_grid(cfg, none);
    LabelSet labels = cfg.contains("labels")
                          ? LabelSet(cfg["labels"].get<std::vector<std::string>>())
                          : LabelSet::numbered(cfg.at("truth_specs").size());
    Distribution prior = cfg.contains("prior") ? resolve_prior(cfg, grid)
                                               : Distribution(grid, ProbVector::uniform(grid.size()));

    Channel channel = Channel::identity(1);
    EntropyDecomposition decomp{};
    if (cfg.contains("truth_specs")) {
        std::vector<TruthSpec> specs;
        for (const auto& sj : cfg["truth_specs"]) specs.push_back(io::truth_spec_from_json(sj));
        const auto sc = SemanticChannel::from_specs(grid, labels, specs);
        const double s_abs = cfg.value("s_abs", 1.0);
        channel = truth_constrained_maxent(sc, s_abs);
        decomp = entropy_decomposition(prior, channel, sc, s_abs);
    } else if (cfg.contains("features")) {
        std::vector<FeatureConstraint> features;
        for (const auto& fj : cfg["features"]) {
            const auto rows = fj.at("matrix").get<std::vector<std::vector<double>>>();
            Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != m.cols()) throw ConfigError("feature matrix is ragged");
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
            }
            features.push_back({std::move(m), fj.value("bound", 0.0), fj.value("multiplier", 0.0)});
        }
        channel = maxent_channel(features, grid.size(), labels.size());
        decomp = entropy_decomposition(prior, channel, features);
    } else {
        throw ConfigError("maxent config needs truth_specs or features");
    }

    std::ostringstream csv;
    io::write_labeled_table_csv(csv, grid, labels, channel.matrix(), "config: " + cfg.dump());
    write_text_file(out_path, csv.str());
    std::cout << "H(X,Y)=" << io::format_double(decomp.joint_entropy_bits)
              << " H(X)=" << io::format_double(decomp.instance_entropy_bits)
              << " H(Y)=" << io::format_double(decomp.label_entropy_bits)
              << " I(Y;Xth)=" << io::format_double(decomp.semantic_mi_bits)
              << " residual=" << io::format_double(decomp.residual()) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_boltzmann_check(const std::string& system_path, const std::string& out_path) {
    const ThermoSystem system = io::thermo_system_from_json(load_json_file(system_path));
    const LocalEquilibriumReport report = local_equilibrium_identity(system);
    std::cout << "S/(kN)=" << io::format_double(report.entropy_per_particle)
              << " max_entropy_term=" << io::format_double(report.max_entropy_term)
              << " I(X;Yth)=" << io::format_double(report.semantic_mi_nats)
              << " residual=" << io::format_double(report.residual) << "\n";
    if (!out_path.empty()) {
        const json j = {{"config", io::thermo_system_to_json(system)},
                        {"entropy_per_particle", report.entropy_per_particle},
                        {"max_entropy_term", report.max_entropy_term},
                        {"semantic_mi_nats", report.semantic_mi_nats},
                        {"residual", report.residual},
                        {"total_entropy", report.total_entropy},
                        {"log_partition", report.log_partition}};
        write_text_file(out_path, j.dump(2) + "\n");
        std::cout << "wrote " << out_path << "\n";
    }
    return report.residual < 1e-9 ? 0 : 1;
}

int run_reproduce(const std::string& scenario, const std::string& variant, double s, double tol,
                  long max_iter, double grid_max, const std::string& out_path) {
    ReproduceOptions options;
    options.tol = tol;
    options.max_iter = static_cast<std::size_t>(max_iter);
    options.grid_max = grid_max;
    const ScenarioReport report = reproduce(scenario, variant_from_string(variant), s, options);
    std::cout << report.render_table();
    if (!out_path.empty()) {
        json rows = json::array();
        for (const auto& r : report.rows)
            rows.push_back({{"name", r.name},
                            {"computed", r.computed},
                            {"target", r.target},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass},
                            {"hard", r.hard},
                            {"provenance", r.provenance},
                            {"note", r.note}});
        const json j = {{"config",
                         {{"scenario", report.scenario},
                          {"variant", to_string(report.variant)},
                          {"s", report.s},
                          {"grid_max", report.grid_max},
                          {"tol", report.tol},
                          {"max_iter", report.max_iter},
                          {"class_layout", report.label_indexing_note}}},
                        {"rate_bits", report.result.rate_bits},
                        {"constraint_value", report.result.constraint},
                        {"label_marginal", report.result.label_marginal.vec()},
                        {"iterations", report.result.iterations},
                        {"converged", report.result.converged},
                        {"runtime_seconds", report.runtime_seconds},
                        {"rows", rows}};
        write_text_file(out_path, j.dump(2) + "\n");
        std::cout << "wrote " << out_path << "\n";
    }
    return report.all_passed() ? 0 : 1;
}

int run_ingest_pgm(const std::string& in_path, const std::string& out_path) {
    const io::PgmHistogram hist = io::ingest_pgm_file(in_path);
    const json config = {{"source", in_path},
                         {"pixels", hist.pixel_count},
                         {"width", hist.width},
                         {"height", hist.height}};
    std::ostringstream csv;
    csv << "# config: " << config.dump() << "\n";
    io::write_distribution_csv(csv, hist.dist);
    write_text_file(out_path, csv.str());
    std::cout << "pixels=" << hist.pixel_count << " (" << hist.width << "x" << hist.height
              << ")\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-mutual-information rate functions under distortion, truth-function, "
                 "and semantic-information constraints"};
    app.require_subcommand(1);

    CommonOverrides ov;
    std::string config_path, out_path, channel_csv, joint_path, system_path, in_path;
    std::string normalization = "global";
    std::string scenario, variant = "rtheta";
    double s = 1.0, tol = 1e-8, grid_max = 100.0;
    long max_iter = 50000;
    unsigned jobs = 1;
    bool cold_start = false;

    auto add_common = [&](CLI::App* cmd, bool with_sgrid) {
        cmd->add_option("--config", config_path, "problem configuration JSON")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--variant", ov.variant, "constraint regime: rd | rtheta | rg");
        cmd->add_option("--tol", ov.tol, "marginal L1 convergence tolerance");
        cmd->add_option("--max-iter", ov.max_iter, "iteration cap");
        cmd->add_option("--grid-max", ov.grid_max, "override the grid upper end");
        if (with_sgrid)
            cmd->add_option("--s-grid", ov.s_grid, "sweep values a:b:n[:geometric]");
        else
            cmd->add_option("--s", ov.s, "constraint parameter s");
    };

    auto* solve_cmd = app.add_subcommand("solve", "one MMI solve; writes result JSON + channel CSV");
    add_common(solve_cmd, false);
    solve_cmd->add_option("--out", out_path, "result JSON path")->required();
    solve_cmd->add_option("--channel-csv", channel_csv, "channel CSV path (default <out>.channel.csv)");

    auto* sweep_cmd = app.add_subcommand("sweep", "rate curve over an s grid; writes curve CSV");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--s", ov.s, "single sweep point");
    sweep_cmd->add_option("--out", out_path, "curve CSV path")->required();
    sweep_cmd->add_option("--jobs", jobs, "concurrent cold-start solves (forces --cold semantics)");
    sweep_cmd->add_flag("--cold", cold_start, "disable warm starts between points");

    auto* learn_cmd = app.add_subcommand("learn-truth", "truth functions from a joint sample CSV");
    learn_cmd->add_option("--joint", joint_path, "joint P(x,y) CSV")->required()->check(CLI::ExistingFile);
    learn_cmd->add_option("--out", out_path, "semantic channel CSV path")->required();
    learn_cmd->add_option("--normalization", normalization, "global | per_label");

    auto* maxent_cmd = app.add_subcommand("maxent", "maximum-entropy channel from truth specs or features");
    maxent_cmd->add_option("--config", config_path, "maxent configuration JSON")
        ->required()
        ->check(CLI::ExistingFile);
    maxent_cmd->add_option("--out", out_path, "channel CSV path")->required();

    auto* boltz_cmd = app.add_subcommand("boltzmann-check", "local-equilibrium entropy identity");
    boltz_cmd->add_option("--system", system_path, "thermo system JSON")
        ->required()
        ->check(CLI::ExistingFile);
    boltz_cmd->add_option("--out", out_path, "report JSON path");

    auto* repro_cmd = app.add_subcommand("reproduce", "run a built-in scenario against its targets");
    repro_cmd->add_option("scenario", scenario, "example1 | example2")
        ->required()
        ->check(CLI::IsMember({"example1", "example2"}));
    repro_cmd->add_option("--variant", variant, "rd | rtheta | rg");
    repro_cmd->add_option("--s", s, "constraint parameter");
    repro_cmd->add_option("--tol", tol, "convergence tolerance");
    repro_cmd->add_option("--max-iter", max_iter, "iteration cap");
    repro_cmd->add_option("--grid-max", grid_max, "example1 age grid upper end");
    repro_cmd->add_option("--out", out_path, "report JSON path");

    auto* pgm_cmd = app.add_subcommand("ingest-pgm", "grey-level histogram from a binary PGM");
    pgm_cmd->add_option("--in", in_path, "PGM (P5) file")->required()->check(CLI::ExistingFile);
    pgm_cmd->add_option("--out", out_path, "distribution CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(config_path, ov, out_path, channel_csv);
        if (sweep_cmd->parsed()) return run_sweep(config_path, ov, out_path, jobs, cold_start);
        if (learn_cmd->parsed()) return run_learn_truth(joint_path, out_path, normalization);
        if (maxent_cmd->parsed()) return run_maxent(config_path, out_path);
        if (boltz_cmd->parsed()) return run_boltzmann_check(system_path, out_path);
        if (repro_cmd->parsed())
            return run_reproduce(scenario, variant, s, tol, max_iter, grid_max, out_path);
        if (pgm_cmd->parsed()) return run_ingest_pgm(in_path, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
