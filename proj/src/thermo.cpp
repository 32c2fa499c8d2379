#include "semrate/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "semrate/bits.hpp"
#include "semrate/measures.hpp"

namespace semrate {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> checked_exponents(std::span<const double> energies, double kT) {
    if (!(kT > 0.0)) throw BadParams("temperature must be positive");
    std::vector<double> e(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        e[i] = -energies[i] / kT;
        if (!std::isfinite(e[i]))
            throw OverflowGuard("non-finite Boltzmann exponent at level " + std::to_string(i));
    }
    return e;
}
}  // namespace

void ThermoSystem::validate() const {
    if (energies.empty()) throw BadParams("thermo system has no energy levels");
    if (degeneracies.size() != energies.size())
        throw DimensionMismatch("one degeneracy per energy level required");
    if (temperatures.empty()) throw BadParams("thermo system has no areas");
    if (area_weights.size() != temperatures.size())
        throw DimensionMismatch("one area weight per temperature required");
    for (double e : energies)
        if (!std::isfinite(e)) throw BadParams("energies must be finite");
    for (double g : degeneracies)
        if (!(g >= 1.0)) throw BadParams("degeneracies must be >= 1");
    for (double t : temperatures)
        if (!(t > 0.0)) throw BadParams("temperatures must be positive");
    double wsum = 0.0;
    for (double w : area_weights) {
        if (!(w >= 0.0)) throw BadParams("area weights must be nonnegative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > ProbVector::kSumTolerance)
        throw InvalidDistribution("area weights sum to " + std::to_string(wsum));
    if (!(boltzmann_k > 0.0)) throw BadParams("Boltzmann constant must be positive");
    if (!(particle_count > 0.0)) throw BadParams("particle count must be positive");
}

ProbVector boltzmann(std::span<const double> energies, double kT) {
    const auto e = checked_exponents(energies, kT);
    const double shift = *std::max_element(e.begin(), e.end());
    std::vector<double> w(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) w[i] = std::exp(e[i] - shift);
    return ProbVector::normalized(std::move(w));
}

ProbVector boltzmann(std::span<const double> energies, const ProbVector& prior, double kT) {
    if (prior.size() != energies.size())
        throw DimensionMismatch("prior size does not match energy levels");
    const auto e = checked_exponents(energies, kT);
    double shift = -kInf;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (prior[i] > 0.0) shift = std::max(shift, e[i]);
    if (shift == -kInf) throw ZeroPartition(0);
    std::vector<double> w(e.size(), 0.0);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (prior[i] > 0.0) w[i] = prior[i] * std::exp(e[i] - shift);
    return ProbVector::normalized(std::move(w));
}

LocalEquilibriumReport local_equilibrium_identity(const ThermoSystem& system) {
    system.validate();
    const std::size_t levels = system.levels();
    const std::size_t areas = system.areas();

    // prior from degeneracies: P(x_i) = G_i / G
    const ProbVector prior = ProbVector::normalized(system.degeneracies);
    double total_g = 0.0;
    for (double g : system.degeneracies) total_g += g;
    const double ln_g = std::log(total_g);

    // energies shifted so the truth functions peak at 1 (pure rescaling;
    // every ratio below is invariant)
    const double e_min = *std::min_element(system.energies.begin(), system.energies.end());

    LocalEquilibriumReport report{};
    report.max_entropy_term = ln_g;  // sum_j P(y_j) ln G_j with shared levels
    report.log_partition.resize(areas);

    double entropy_route = 0.0;   // sum_j P(y_j) [ln G - KL(P(x|T_j) || P(x))]
    double semantic_route = 0.0;  // sum_j P(y_j) sum_i P(x_i|T_j) ln[T_ij / Z'_j]

    for (std::size_t j = 0; j < areas; ++j) {
        const double kt = system.boltzmann_k * system.temperatures[j];
        const ProbVector posterior = boltzmann(system.energies, prior, kt);

        double kl = 0.0;
        for (std::size_t i = 0; i < levels; ++i)
            if (posterior[i] > 0.0) kl += posterior[i] * std::log(posterior[i] / prior[i]);
        entropy_route += system.area_weights[j] * (ln_g - kl);

        std::vector<double> truth(levels);
        double z_prime = 0.0;
        for (std::size_t i = 0; i < levels; ++i) {
            truth[i] = std::exp(-(system.energies[i] - e_min) / kt);
            z_prime += prior[i] * truth[i];
        }
        const Bits g_info = generalized_kl(posterior, truth, z_prime);
        semantic_route += system.area_weights[j] * nats_from_bits(g_info.value());
        report.log_partition[j] = std::log(z_prime) - e_min / kt;  // ln Z' of the raw energies
    }

    report.entropy_per_particle = entropy_route;
    report.semantic_mi_nats = semantic_route;
    report.residual = std::abs(entropy_route - (ln_g - semantic_route));
    report.total_entropy = system.boltzmann_k * system.particle_count * entropy_route;
    return report;
}

}  // namespace semrate
