#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semrate/distribution.hpp"

namespace semrate {

// A local-equilibrium system: shared energy levels with degeneracies, and
// areas y_j holding fractions P(y_j) of the particles at temperature T_j.
struct ThermoSystem {
    std::vector<double> energies;       // e_i
    std::vector<double> degeneracies;   // G_i >= 1, shared by all areas
    std::vector<double> temperatures;   // T_j > 0, one per area
    std::vector<double> area_weights;   // P(y_j), sums to 1
    double boltzmann_k = 1.0;
    double particle_count = 1.0;        // N

    std::size_t levels() const { return energies.size(); }
    std::size_t areas() const { return temperatures.size(); }
    void validate() const;
};

// P(x_i|T) = exp(-e_i/kT) / Z. Max-shifted; throws OverflowGuard only on
// non-finite exponents. kT = k * T.
ProbVector boltzmann(std::span<const double> energies, double kT);

// Prior-weighted form P(x_i|T) = P(x_i) exp(-e_i/kT) / Z'; equals
// semantic_bayes(prior, truth = exp(-e/kT)).
ProbVector boltzmann(std::span<const double> energies, const ProbVector& prior, double kT);

struct LocalEquilibriumReport {
    double entropy_per_particle;  // S/(kN), nats, from the entropy sums
    double max_entropy_term;      // sum_j P(y_j) ln G_j, nats
    double semantic_mi_nats;      // I(X;Y_theta) via truth functions exp(-e/kT_j)
    double residual;              // |S/(kN) - (max_entropy_term - semantic_mi_nats)|
    double total_entropy;         // S = k N * entropy_per_particle
    std::vector<double> log_partition;  // ln Z'_j per area
};

// Checks that the per-area Boltzmann entropy decomposes as extreme maximum
// entropy minus semantic mutual information. The left side is computed from
// the entropy sums, the right side from truth functions and logical
// probabilities; the residual is their disagreement.
LocalEquilibriumReport local_equilibrium_identity(const ThermoSystem& system);

}  // namespace semrate
