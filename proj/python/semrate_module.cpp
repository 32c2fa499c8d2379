#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semrate/bayes.hpp"
#include "semrate/io.hpp"
#include "semrate/kernel.hpp"
#include "semrate/maxent.hpp"
#include "semrate/measures.hpp"
#include "semrate/scenarios.hpp"
#include "semrate/solver.hpp"
#include "semrate/thermo.hpp"

namespace py = pybind11;
using namespace semrate;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw BadParams("empty matrix");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw BadParams("ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> rows_from_matrix(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows[i].assign(m.row(i).begin(), m.row(i).end());
    return rows;
}

py::dict report_to_dict(const ScenarioReport& report) {
    py::dict d;
    d["scenario"] = report.scenario;
    d["variant"] = to_string(report.variant);
    d["s"] = report.s;
    d["rate_bits"] = report.result.rate_bits;
    d["constraint"] = report.result.constraint;
    d["marginal"] = report.result.label_marginal.vec();
    d["iterations"] = report.result.iterations;
    d["converged"] = report.result.converged;
    d["runtime_seconds"] = report.runtime_seconds;
    d["all_passed"] = report.all_passed();
    d["hard_passed"] = report.hard_passed();
    py::list rows;
    for (const auto& r : report.rows) {
        py::dict row;
        row["name"] = r.name;
        row["computed"] = r.computed;
        row["target"] = r.target;
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        row["hard"] = r.hard;
        row["provenance"] = r.provenance;
        rows.append(row);
    }
    d["rows"] = rows;
    d["table"] = report.render_table();
    return d;
}

}  // namespace

PYBIND11_MODULE(semrate, m) {
    m.doc() = "minimum-mutual-information rate functions with semantic constraints";

    py::class_<Grid>(m, "Grid")
        .def(py::init<std::vector<double>>(), py::arg("points"))
        .def_static("regular", &Grid::regular, py::arg("min"), py::arg("max"),
                    py::arg("step") = 1.0)
        .def("__len__", &Grid::size)
        .def_property_readonly("points", [](const Grid& g) {
            return std::vector<double>(g.points().begin(), g.points().end());
        });

    py::class_<Distribution>(m, "Distribution")
        .def(py::init([](const Grid& g, std::vector<double> p) {
                 return Distribution(g, ProbVector::normalized(std::move(p)));
             }),
             py::arg("grid"), py::arg("weights"))
        .def_property_readonly("grid", &Distribution::grid)
        .def_property_readonly("p", [](const Distribution& d) { return d.prob().vec(); })
        .def("__len__", &Distribution::size);

    py::class_<Channel>(m, "Channel")
        .def(py::init([](const std::vector<std::vector<double>>& rows) {
                 return Channel(matrix_from_rows(rows));
             }),
             py::arg("rows"))
        .def_static("identity", &Channel::identity)
        .def_property_readonly("rows", [](const Channel& c) { return rows_from_matrix(c.matrix()); })
        .def_property_readonly("instances", &Channel::instances)
        .def_property_readonly("labels", &Channel::labels);

    // TruthSpec travels as a union of these four registered types
    py::class_<LogisticRise>(m, "LogisticRise")
        .def(py::init<double, double>(), py::arg("center"), py::arg("steepness"))
        .def_readonly("center", &LogisticRise::center)
        .def_readonly("steepness", &LogisticRise::steepness)
        .def("__repr__",
             [](const LogisticRise& s) { return io::truth_spec_to_json(TruthSpec(s)).dump(); });
    py::class_<LogisticFall>(m, "LogisticFall")
        .def(py::init<double, double>(), py::arg("center"), py::arg("steepness"))
        .def_readonly("center", &LogisticFall::center)
        .def_readonly("steepness", &LogisticFall::steepness)
        .def("__repr__",
             [](const LogisticFall& s) { return io::truth_spec_to_json(TruthSpec(s)).dump(); });
    py::class_<BumpComplementPow>(m, "BumpComplementPow")
        .def(py::init<double, double, int>(), py::arg("mu"), py::arg("sigma2"), py::arg("power"))
        .def_readonly("mu", &BumpComplementPow::mu)
        .def_readonly("sigma2", &BumpComplementPow::sigma2)
        .def_readonly("power", &BumpComplementPow::power)
        .def("__repr__", [](const BumpComplementPow& s) {
            return io::truth_spec_to_json(TruthSpec(s)).dump();
        });
    py::class_<TruthTable>(m, "TruthTable")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_readonly("values", &TruthTable::values);
    m.def("logistic_rise",
          [](double center, double steepness) { return LogisticRise{center, steepness}; });
    m.def("logistic_fall",
          [](double center, double steepness) { return LogisticFall{center, steepness}; });
    m.def("bump_complement_pow", [](double mu, double sigma2, int power) {
        return BumpComplementPow{mu, sigma2, power};
    });
    m.def("truth_table", [](std::vector<double> values) { return TruthTable{std::move(values)}; });
    m.def("eval_spec", &eval_spec, py::arg("spec"), py::arg("grid"));

    py::class_<SemanticChannel>(m, "SemanticChannel")
        .def(py::init([](const Grid& g, std::vector<std::string> labels,
                         const std::vector<std::vector<double>>& truth) {
                 return SemanticChannel(g, LabelSet(std::move(labels)), matrix_from_rows(truth));
             }),
             py::arg("grid"), py::arg("labels"), py::arg("truth_rows"))
        .def_static("from_specs",
                    [](const Grid& g, std::vector<std::string> labels,
                       const std::vector<TruthSpec>& specs) {
                        return SemanticChannel::from_specs(g, LabelSet(std::move(labels)), specs);
                    })
        .def_property_readonly("truth", [](const SemanticChannel& sc) {
            return rows_from_matrix(sc.truth());
        })
        .def_property_readonly("label_names", [](const SemanticChannel& sc) {
            return sc.labels().names();
        })
        .def("logical_probabilities", &SemanticChannel::logical_probabilities);

    py::class_<DistortionMatrix>(m, "DistortionMatrix")
        .def(py::init([](const std::vector<std::vector<double>>& rows) {
                 return DistortionMatrix(matrix_from_rows(rows));
             }),
             py::arg("rows"))
        .def_property_readonly("rows", [](const DistortionMatrix& d) {
            return rows_from_matrix(d.table());
        });
    m.def("truth_to_distortion", &truth_to_distortion);
    m.def("distortion_to_truth", [](const DistortionMatrix& d, const Grid& g,
                                    std::vector<std::string> labels) {
        return distortion_to_truth(d, g, LabelSet(std::move(labels)));
    });

    // probability + information operations
    m.def("normalize", [](std::vector<double> w) { return ProbVector::normalized(std::move(w)).vec(); });
    m.def("bayes_update", [](const Distribution& prior, const Channel& ch) {
        const auto r = bayes_update(prior, ch);
        py::list posteriors;
        for (const auto& p : r.posteriors) {
            if (p)
                posteriors.append(p->vec());
            else
                posteriors.append(py::none());
        }
        return py::make_tuple(r.marginal.vec(), posteriors);
    });
    m.def("semantic_bayes", [](const Distribution& prior, const std::vector<double>& truth) {
        const auto r = semantic_bayes(prior, truth);
        return py::make_tuple(r.logical_prob, r.posterior.vec());
    });
    m.def("truth_from_likelihood",
          [](const Distribution& prior, std::vector<double> likelihood, double ratio) {
              const auto r = truth_from_likelihood(prior, ProbVector(std::move(likelihood)), ratio);
              return py::make_tuple(r.truth, r.logical_prob);
          });
    m.def("shannon_entropy",
          [](std::vector<double> p) { return shannon_entropy(ProbVector(std::move(p))).value(); });
    m.def("mutual_information", [](const Distribution& prior, const Channel& ch) {
        const auto r = mutual_information(prior, ch);
        return py::make_tuple(r.value.value(), r.label_entropy.value(),
                              r.conditional_entropy.value());
    });
    m.def("kl_divergence", [](std::vector<double> p, std::vector<double> q) {
        return kl_divergence(ProbVector(std::move(p)), ProbVector(std::move(q))).value();
    });
    m.def("semantic_info_point",
          [](double t, double lp) { return semantic_info_point(t, lp).value(); });
    m.def("generalized_kl",
          [](std::vector<double> sampling, const std::vector<double>& truth,
             const Distribution& prior) {
              return generalized_kl(ProbVector(std::move(sampling)), truth, prior).value();
          });
    m.def("semantic_mutual_information",
          [](const Distribution& prior, const Channel& ch, const SemanticChannel& sc) {
              const auto r = semantic_mutual_information(prior, ch, sc);
              py::dict d;
              d["smi"] = r.smi.value();
              d["semantic_entropy"] = r.semantic_entropy.value();
              d["fuzzy_entropy"] = r.fuzzy_entropy.value();
              return d;
          });
    m.def("learn_truth_empirical",
          [](const std::vector<std::vector<double>>& joint, const Grid& g,
             std::vector<std::string> labels, const std::string& norm) {
              return learn_truth_empirical(JointDistribution(matrix_from_rows(joint)), g,
                                           LabelSet(std::move(labels)),
                                           norm == "per_label" ? TruthNormalization::per_label
                                                               : TruthNormalization::global);
          },
          py::arg("joint_rows"), py::arg("grid"), py::arg("labels"),
          py::arg("normalization") = "global");

    // constraint kernels + solver
    py::class_<ConstraintKernel>(m, "ConstraintKernel")
        .def_property_readonly("variant", [](const ConstraintKernel& k) { return to_string(k.variant()); })
        .def_property_readonly("s", &ConstraintKernel::s);
    m.def("build_rd_kernel", &build_rd_kernel, py::arg("distortion"), py::arg("s"));
    m.def("build_rtheta_kernel", &build_rtheta_kernel, py::arg("semchan"), py::arg("s_abs"));
    m.def("build_rg_kernel", &build_rg_kernel, py::arg("semchan"), py::arg("prior"), py::arg("s"));

    py::class_<SolverResult>(m, "SolverResult")
        .def_property_readonly("channel", [](const SolverResult& r) { return r.channel; })
        .def_property_readonly("marginal", [](const SolverResult& r) { return r.label_marginal.vec(); })
        .def_readonly("rate_bits", &SolverResult::rate_bits)
        .def_readonly("constraint", &SolverResult::constraint)
        .def_readonly("iterations", &SolverResult::iterations)
        .def_readonly("converged", &SolverResult::converged)
        .def_property_readonly("trace", [](const SolverResult& r) {
            py::list out;
            for (const auto& t : r.trace)
                out.append(py::make_tuple(t.rate_bits, t.label_entropy_bits, t.constraint));
            return out;
        });
    m.def("mmi_iterate",
          [](const Distribution& prior, const ConstraintKernel& kernel, double tol,
             std::size_t max_iter) {
              SolveOptions o;
              o.tol = tol;
              o.max_iter = max_iter;
              return mmi_iterate(prior, kernel, o);
          },
          py::arg("prior"), py::arg("kernel"), py::arg("tol") = 1e-8,
          py::arg("max_iter") = 10000);
    m.def("mmi_step", [](std::vector<double> marginal, const ConstraintKernel& kernel) {
        auto r = mmi_step(ProbVector(std::move(marginal)), kernel);
        return py::make_tuple(r.channel, r.log_partition);
    });
    m.def("rate_point_parametric",
          [](const Distribution& prior, const ConstraintKernel& kernel, const SolverResult& res) {
              const auto r = rate_point_parametric(prior, kernel, res);
              return py::make_tuple(r.rate_bits, r.constraint);
          });
    m.def("sweep_curve",
          [](const Distribution& prior, const std::function<ConstraintKernel(double)>& factory,
             std::vector<double> s_values, bool warm_start, double tol, std::size_t max_iter) {
              SweepOptions o;
              o.warm_start = warm_start;
              o.solve.tol = tol;
              o.solve.max_iter = max_iter;
              const auto points = sweep_curve(prior, factory, std::move(s_values), o);
              py::list out;
              for (const auto& p : points) {
                  py::dict d;
                  d["s"] = p.s;
                  d["rate_bits"] = p.rate_bits;
                  d["constraint"] = p.constraint;
                  d["iterations"] = p.iterations;
                  d["converged"] = p.converged;
                  d["error"] = p.error;
                  out.append(d);
              }
              return out;
          },
          py::arg("prior"), py::arg("kernel_for_s"), py::arg("s_values"),
          py::arg("warm_start") = true, py::arg("tol") = 1e-8, py::arg("max_iter") = 10000);
    m.def("solve_for_target",
          [](const Distribution& prior, const std::function<ConstraintKernel(double)>& factory,
             double target, double s_lo, double s_hi, double tol, std::size_t max_iter) {
              SolveOptions o;
              o.tol = tol;
              o.max_iter = max_iter;
              return solve_for_target(prior, factory, target, s_lo, s_hi, o);
          },
          py::arg("prior"), py::arg("kernel_for_s"), py::arg("target"), py::arg("s_lo"),
          py::arg("s_hi"), py::arg("tol") = 1e-8, py::arg("max_iter") = 10000);
    m.def("learn_truth_parametric",
          [](std::vector<double> sampling, const Distribution& prior, const std::string& family,
             std::vector<std::pair<double, double>> ranges, int levels, int points,
             int bump_power) {
              SearchConfig cfg;
              for (const auto& [lo, hi] : ranges) cfg.ranges.push_back({lo, hi});
              cfg.levels = levels;
              cfg.points_per_axis = points;
              cfg.bump_power = bump_power;
              const TruthFamily fam =
                  family == "logistic_rise"        ? TruthFamily::logistic_rise
                  : family == "logistic_fall"      ? TruthFamily::logistic_fall
                  : family == "bump_complement_pow"
                      ? TruthFamily::bump_complement_pow
                      : throw ConfigError("unknown truth family: " + family);
              const auto fit =
                  learn_truth_parametric(ProbVector(std::move(sampling)), prior, fam, cfg);
              py::dict d;
              d["spec"] = fit.spec;
              d["objective_bits"] = fit.objective_bits;
              d["at_bound"] = fit.at_bound;
              return d;
          },
          py::arg("sampling"), py::arg("prior"), py::arg("family"), py::arg("ranges"),
          py::arg("levels") = 3, py::arg("points_per_axis") = 32, py::arg("bump_power") = 2);

    // maximum entropy + thermodynamics
    m.def("truth_constrained_maxent", &truth_constrained_maxent, py::arg("semchan"),
          py::arg("s_abs"));
    m.def("entropy_decomposition",
          [](const Distribution& prior, const Channel& ch, const SemanticChannel& sc, double s) {
              const auto d = entropy_decomposition(prior, ch, sc, s);
              py::dict out;
              out["joint_entropy_bits"] = d.joint_entropy_bits;
              out["instance_entropy_bits"] = d.instance_entropy_bits;
              out["label_entropy_bits"] = d.label_entropy_bits;
              out["semantic_mi_bits"] = d.semantic_mi_bits;
              out["residual"] = d.residual();
              return out;
          });
    m.def("boltzmann", [](std::vector<double> energies, double kT) {
        return boltzmann(energies, kT).vec();
    });
    m.def("boltzmann_with_prior",
          [](std::vector<double> energies, std::vector<double> prior, double kT) {
              return boltzmann(energies, ProbVector(std::move(prior)), kT).vec();
          });
    m.def("local_equilibrium_identity",
          [](std::vector<double> energies, std::vector<double> degeneracies,
             std::vector<double> temperatures, std::vector<double> weights, double k, double n) {
              ThermoSystem sys;
              sys.energies = std::move(energies);
              sys.degeneracies = std::move(degeneracies);
              sys.temperatures = std::move(temperatures);
              sys.area_weights = std::move(weights);
              sys.boltzmann_k = k;
              sys.particle_count = n;
              const auto r = local_equilibrium_identity(sys);
              py::dict d;
              d["entropy_per_particle"] = r.entropy_per_particle;
              d["max_entropy_term"] = r.max_entropy_term;
              d["semantic_mi_nats"] = r.semantic_mi_nats;
              d["residual"] = r.residual;
              d["total_entropy"] = r.total_entropy;
              return d;
          },
          py::arg("energies"), py::arg("degeneracies"), py::arg("temperatures"),
          py::arg("weights"), py::arg("k") = 1.0, py::arg("particles") = 1.0);

    // scenarios
    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("prior", &Scenario::prior)
        .def_readonly("semchan", &Scenario::semchan);
    m.def("build_example1", &build_example1, py::arg("grid_max") = 100.0);
    m.def("build_example2", &build_example2);
    m.def("reproduce",
          [](const std::string& scenario, const std::string& variant, double s, double tol,
             std::size_t max_iter, double grid_max) {
              ReproduceOptions o;
              o.tol = tol;
              o.max_iter = max_iter;
              o.grid_max = grid_max;
              return report_to_dict(reproduce(scenario, variant_from_string(variant), s, o));
          },
          py::arg("scenario"), py::arg("variant"), py::arg("s") = 1.0, py::arg("tol") = 1e-8,
          py::arg("max_iter") = 50000, py::arg("grid_max") = 100.0);

    m.def("ingest_pgm", [](const std::string& path) {
        const auto h = io::ingest_pgm_file(path);
        return py::make_tuple(h.dist.prob().vec(), h.pixel_count, h.width, h.height);
    });
}
