#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qprob/event.hpp"

namespace qprob {

enum class ParticleStatistics { fermion, boson };

/// Grand-canonical ensemble of indistinguishable non-interacting particles:
/// single-particle mode energies, inverse temperature beta and chemical
/// potential mu. Boson occupation is truncated at n_max per mode; fermion
/// occupation is 0 or 1.
class FockEnsemble {
public:
    static FockEnsemble fermions(std::vector<double> mode_energies, double beta, double mu);
    /// Throws Error unless beta * (eps_j - mu) > 0 for every mode (the
    /// untruncated occupation series diverges otherwise).
    static FockEnsemble bosons(std::vector<double> mode_energies, double beta, double mu,
                               std::size_t n_max);

    std::size_t mode_count() const { return energies_.size(); }
    std::span<const double> mode_energies() const { return energies_; }
    double beta() const { return beta_; }
    double mu() const { return mu_; }
    ParticleStatistics statistics() const { return stats_; }
    /// Largest occupation per mode (1 for fermions, n_max for bosons).
    std::size_t occupancy_cap() const { return cap_; }
    /// beta * (eps_j - mu).
    double reduced_energy(std::size_t j) const;

private:
    FockEnsemble(std::vector<double> e, double beta, double mu, ParticleStatistics st,
                 std::size_t cap);

    std::vector<double> energies_;
    double beta_, mu_;
    ParticleStatistics stats_;
    std::size_t cap_;
};

/// Single-mode partition sum Z_j = sum_{n=0}^{cap} exp(-beta (eps_j - mu) n).
double mode_partition(const FockEnsemble& e, std::size_t j);
double log_mode_partition(const FockEnsemble& e, std::size_t j);

/// Grand partition function as the product of mode partition sums,
/// accumulated in log space.
double log_grand_partition(const FockEnsemble& e);
double grand_partition(const FockEnsemble& e);

/// Probability that mode j holds exactly n particles; sums to 1 over n.
double occupation_probability(const FockEnsemble& e, std::size_t j, std::size_t n);

/// Mean occupation of mode j under the truncated mode distribution.
double mean_occupation(const FockEnsemble& e, std::size_t j);

/// Ensemble mean of a linear occupation observable sum_j a_j n_j, via the
/// factorized per-mode means.
double linear_observable_expectation(const FockEnsemble& e, std::span<const double> a);

/// Conditional expectation of a linear occupation observable given an
/// occupation-predicate event, by exhaustive enumeration over the truncated
/// Fock vectors. Throws EnumerationTooLarge above the vector-count guard
/// and ZeroConditionEvent when the event carries no probability.
double fock_conditional_expectation(const FockEnsemble& e, std::span<const double> a,
                                    const Event& event);

/// Number of occupation vectors in the truncated space; throws
/// EnumerationTooLarge above the guard (10^6 vectors).
std::size_t enumeration_size(const FockEnsemble& e);

/// Direct trace over all truncated occupation vectors of
/// exp(-beta (E(N) - mu N)); the unfactorized route for cross-checks.
double grand_partition_enumerated(const FockEnsemble& e);

/// Ensemble average of a linear occupation observable by direct enumeration
/// (Boltzmann-weighted trace over occupation vectors).
double ensemble_average_enumerated(const FockEnsemble& e, std::span<const double> a);

/// The same average evaluated through the equilibrium state coefficients
/// C(N) = prod_j sqrt(P(n_j)) as sum O(N) C(N)^2.
double equilibrium_state_expectation(const FockEnsemble& e, std::span<const double> a);

/// Visits every truncated occupation vector in odometer order.
void for_each_occupation(const FockEnsemble& e,
                         const std::function<void(std::span<const std::size_t>)>& fn);

}
