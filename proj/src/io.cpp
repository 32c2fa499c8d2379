#include "semrate/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace semrate::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError("bad number '" + s + "' in " + what);
    }
}

// next non-empty, non-comment line
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty() && line[0] != '#') return true;
    }
    return false;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Distribution read_distribution_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw ParseError("distribution csv: missing header");
    const auto header = split_csv(line);
    if (header.size() != 2 || header[0] != "x" || header[1] != "p")
        throw ParseError("distribution csv: header must be 'x,p'");
    std::vector<double> xs, ps;
    while (next_line(in, line)) {
        const auto f = split_csv(line);
        if (f.size() != 2) throw ParseError("distribution csv: expected two fields, got " + line);
        xs.push_back(parse_double(f[0], "x column"));
        ps.push_back(parse_double(f[1], "p column"));
    }
    if (xs.empty()) throw ParseError("distribution csv: no rows");
    return Distribution(Grid(std::move(xs)), ProbVector::normalized(std::move(ps)));
}

Distribution read_distribution_csv_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_distribution_csv(in);
}

void write_distribution_csv(std::ostream& out, const Distribution& dist) {
    out << "x,p\n";
    for (std::size_t i = 0; i < dist.size(); ++i)
        out << format_double(dist.grid()[i]) << "," << format_double(dist[i]) << "\n";
}

LabeledTable read_labeled_table_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw ParseError("table csv: missing header");
    auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "x")
        throw ParseError("table csv: header must be 'x,<label>,...'");
    std::vector<std::string> names(header.begin() + 1, header.end());

    std::vector<double> xs;
    std::vector<double> values;
    while (next_line(in, line)) {
        const auto f = split_csv(line);
        if (f.size() != names.size() + 1)
            throw ParseError("table csv: expected " + std::to_string(names.size() + 1) +
                             " fields, got " + std::to_string(f.size()));
        xs.push_back(parse_double(f[0], "x column"));
        for (std::size_t j = 1; j < f.size(); ++j)
            values.push_back(parse_double(f[j], "column " + names[j - 1]));
    }
    if (xs.empty()) throw ParseError("table csv: no rows");
    const std::size_t m = xs.size(), n = names.size();
    return {Grid(std::move(xs)), LabelSet(std::move(names)), Matrix(m, n, std::move(values))};
}

LabeledTable read_labeled_table_csv_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_labeled_table_csv(in);
}

void write_labeled_table_csv(std::ostream& out, const Grid& grid, const LabelSet& labels,
                             const Matrix& values, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "x";
    for (const auto& name : labels.names()) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_double(grid[i]);
        for (std::size_t j = 0; j < labels.size(); ++j) out << "," << format_double(values(i, j));
        out << "\n";
    }
}

Channel channel_from_table(const LabeledTable& t) { return Channel(t.values); }

SemanticChannel semantic_channel_from_table(const LabeledTable& t) {
    return SemanticChannel(t.grid, t.labels, t.values);
}

JointDistribution joint_from_table(const LabeledTable& t) {
    // ingested joints may be raw counts; scale by the total mass
    double total = 0.0;
    for (double v : t.values.data()) {
        if (!(v >= 0.0)) throw ParseError("joint table: negative or NaN entry");
        total += v;
    }
    if (total == 0.0) throw ParseError("joint table: all entries are zero");
    Matrix scaled = t.values;
    for (double& v : scaled.data()) v /= total;
    return JointDistribution(std::move(scaled));
}

TruthSpec truth_spec_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "logistic_rise")
        return LogisticRise{j.at("center").get<double>(), j.at("steepness").get<double>()};
    if (kind == "logistic_fall")
        return LogisticFall{j.at("center").get<double>(), j.at("steepness").get<double>()};
    if (kind == "bump_complement_pow")
        return BumpComplementPow{j.at("mu").get<double>(), j.at("sigma2").get<double>(),
                                 j.at("power").get<int>()};
    if (kind == "table") return TruthTable{j.at("values").get<std::vector<double>>()};
    throw ConfigError("unknown truth spec kind: " + kind);
}

json truth_spec_to_json(const TruthSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LogisticRise>)
                return {{"kind", "logistic_rise"}, {"center", s.center}, {"steepness", s.steepness}};
            else if constexpr (std::is_same_v<T, LogisticFall>)
                return {{"kind", "logistic_fall"}, {"center", s.center}, {"steepness", s.steepness}};
            else if constexpr (std::is_same_v<T, BumpComplementPow>)
                return {{"kind", "bump_complement_pow"},
                        {"mu", s.mu},
                        {"sigma2", s.sigma2},
                        {"power", s.power}};
            else
                return {{"kind", "table"}, {"values", s.values}};
        },
        spec);
}

void write_curve_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const json& config) {
    out << "# config: " << config.dump() << "\n";
    out << "s,rate_bits,constraint_value,iterations,converged\n";
    for (const auto& p : points) {
        out << format_double(p.s) << ",";
        if (p.error.empty())
            out << format_double(p.rate_bits) << "," << format_double(p.constraint);
        else
            out << "nan,nan";
        out << "," << p.iterations << "," << (p.converged ? "true" : "false") << "\n";
    }
    for (const auto& p : points)
        if (!p.error.empty()) out << "# error at s=" << format_double(p.s) << ": " << p.error << "\n";
}

json solver_result_to_json(const SolverResult& result, const json& config) {
    json trace = json::array();
    for (const auto& t : result.trace)
        trace.push_back({{"rate_bits", t.rate_bits},
                         {"label_entropy_bits", t.label_entropy_bits},
                         {"constraint", t.constraint}});
    return {{"config", config},
            {"variant", to_string(result.variant)},
            {"s", result.s},
            {"rate_bits", result.rate_bits},
            {"constraint_value", result.constraint},
            {"iterations", result.iterations},
            {"converged", result.converged},
            {"label_marginal", result.label_marginal.vec()},
            {"channel",
             {{"instances", result.channel.instances()},
              {"labels", result.channel.labels()},
              {"row_major", result.channel.matrix().data()}}},
            {"log_partition", result.log_partition},
            {"trace", trace}};
}

ThermoSystem thermo_system_from_json(const json& j) {
    ThermoSystem s;
    try {
        s.energies = j.at("energies").get<std::vector<double>>();
        if (j.contains("degeneracies"))
            s.degeneracies = j.at("degeneracies").get<std::vector<double>>();
        else
            s.degeneracies.assign(s.energies.size(), 1.0);
        s.temperatures = j.at("temperatures").get<std::vector<double>>();
        s.area_weights = j.at("weights").get<std::vector<double>>();
        s.boltzmann_k = j.value("k", 1.0);
        s.particle_count = j.value("particles", 1.0);
    } catch (const json::exception& e) {
        throw ParseError(std::string("thermo system: ") + e.what());
    }
    try {
        s.validate();
    } catch (const Error& e) {
        throw ParseError(std::string("thermo system: ") + e.what());
    }
    return s;
}

json thermo_system_to_json(const ThermoSystem& s) {
    return {{"energies", s.energies},     {"degeneracies", s.degeneracies},
            {"temperatures", s.temperatures}, {"weights", s.area_weights},
            {"k", s.boltzmann_k},         {"particles", s.particle_count}};
}

namespace {

// one whitespace-delimited header token, honoring '#' comments
std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw TruncatedFile("pgm: header ended early");
    return tok;
}

std::size_t pgm_number(std::istream& in, const char* what) {
    const std::string tok = pgm_token(in);
    try {
        const long long v = std::stoll(tok);
        if (v < 0) throw ParseError("");
        return static_cast<std::size_t>(v);
    } catch (...) {
        throw ParseError(std::string("pgm: bad ") + what + " '" + tok + "'");
    }
}

}  // namespace

PgmHistogram ingest_pgm(std::istream& in) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '5')
        throw BadMagic("pgm: expected binary magic 'P5'");
    const std::size_t width = pgm_number(in, "width");
    const std::size_t height = pgm_number(in, "height");
    const std::size_t maxval = pgm_number(in, "maxval");
    if (maxval != 255)
        throw UnsupportedMaxval("pgm: maxval " + std::to_string(maxval) + " (only 255 supported)");
    if (width == 0 || height == 0) throw ParseError("pgm: empty image");
    // the whitespace byte closing the maxval token is the header/raster
    // separator; the raster starts immediately after it

    const std::size_t count = width * height;
    std::vector<unsigned char> pixels(count);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
        throw TruncatedFile("pgm: raster has " + std::to_string(in.gcount()) + " of " +
                            std::to_string(count) + " bytes");

    std::vector<double> hist(256, 0.0);
    for (unsigned char p : pixels) hist[p] += 1.0;
    Distribution dist(Grid::regular(0.0, 255.0, 1.0), ProbVector::normalized(std::move(hist)));
    return {std::move(dist), count, width, height};
}

PgmHistogram ingest_pgm_file(const std::string& path) {
    auto in = open_or_throw(path);
    return ingest_pgm(in);
}

}  // namespace semrate::io
