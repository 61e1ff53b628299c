#include "qprob/fock.hpp"

#include <cmath>
#include <functional>

namespace qprob {

namespace {
constexpr std::size_t k_enumeration_guard = 1000000;
}

FockEnsemble::FockEnsemble(std::vector<double> e, double beta, double mu,
                           ParticleStatistics st, std::size_t cap)
    : energies_(std::move(e)), beta_(beta), mu_(mu), stats_(st), cap_(cap) {
    if (energies_.empty()) throw Error("ensemble requires at least one mode");
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw Error("beta must be positive and finite");
    if (!std::isfinite(mu_)) throw Error("mu must be finite");
    for (double eps : energies_) {
        if (!std::isfinite(eps)) throw Error("mode energies must be finite");
    }
    if (cap_ < 1) throw Error("occupancy cap must be >= 1");
}

FockEnsemble FockEnsemble::fermions(std::vector<double> mode_energies, double beta,
                                    double mu) {
    return FockEnsemble(std::move(mode_energies), beta, mu, ParticleStatistics::fermion, 1);
}

FockEnsemble FockEnsemble::bosons(std::vector<double> mode_energies, double beta, double mu,
                                  std::size_t n_max) {
    FockEnsemble e(std::move(mode_energies), beta, mu, ParticleStatistics::boson, n_max);
    for (std::size_t j = 0; j < e.mode_count(); ++j) {
        if (!(e.reduced_energy(j) > 0.0)) {
            throw Error("boson mode requires beta * (eps - mu) > 0 (mode " +
                        std::to_string(j) + ")");
        }
    }
    return e;
}

double FockEnsemble::reduced_energy(std::size_t j) const {
    return beta_ * (energies_[j] - mu_);
}

double log_mode_partition(const FockEnsemble& e, std::size_t j) {
    if (j >= e.mode_count()) throw Error("mode index out of range");
    const double x = e.reduced_energy(j);
    if (e.statistics() == ParticleStatistics::fermion) {
        // log(1 + e^{-x}) without overflow for large |x|
        return x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
    }
    // truncated geometric series, r = e^{-x} with x > 0
    const double r = std::exp(-x);
    const std::size_t terms = e.occupancy_cap() + 1;
    return std::log1p(-std::pow(r, double(terms))) - std::log1p(-r);
}

double mode_partition(const FockEnsemble& e, std::size_t j) {
    return std::exp(log_mode_partition(e, j));
}

double log_grand_partition(const FockEnsemble& e) {
    KahanSum sum;
    for (std::size_t j = 0; j < e.mode_count(); ++j) {
        sum.add(log_mode_partition(e, j));
    }
    return sum.value();
}

double grand_partition(const FockEnsemble& e) { return std::exp(log_grand_partition(e)); }

double occupation_probability(const FockEnsemble& e, std::size_t j, std::size_t n) {
    if (n > e.occupancy_cap()) throw Error("occupation exceeds the statistics range");
    const double x = e.reduced_energy(j);
    return std::exp(-x * double(n) - log_mode_partition(e, j));
}

double mean_occupation(const FockEnsemble& e, std::size_t j) {
    KahanSum sum;
    for (std::size_t n = 1; n <= e.occupancy_cap(); ++n) {
        sum.add(double(n) * occupation_probability(e, j, n));
    }
    return sum.value();
}

double linear_observable_expectation(const FockEnsemble& e, std::span<const double> a) {
    if (a.size() != e.mode_count()) {
        throw DimensionMismatch("observable coefficient count does not match mode count");
    }
    KahanSum sum;
    for (std::size_t j = 0; j < e.mode_count(); ++j) {
        sum.add(a[j] * mean_occupation(e, j));
    }
    return sum.value();
}

std::size_t enumeration_size(const FockEnsemble& e) {
    std::size_t count = 1;
    const std::size_t per_mode = e.occupancy_cap() + 1;
    for (std::size_t j = 0; j < e.mode_count(); ++j) {
        if (count > k_enumeration_guard / per_mode) {
            throw EnumerationTooLarge("truncated Fock space exceeds 10^6 vectors");
        }
        count *= per_mode;
    }
    return count;
}

void for_each_occupation(const FockEnsemble& e,
                         const std::function<void(std::span<const std::size_t>)>& fn) {
    enumeration_size(e);
    std::vector<std::size_t> n(e.mode_count(), 0);
    const std::size_t cap = e.occupancy_cap();
    while (true) {
        fn(n);
        std::size_t j = 0;
        while (j < n.size() && n[j] == cap) {
            n[j] = 0;
            ++j;
        }
        if (j == n.size()) break;
        ++n[j];
    }
}

namespace {

// Boltzmann weight of one occupation vector relative to the grand partition
// function: prod_j exp(-x_j n_j) / Z_G.
double vector_probability(const FockEnsemble& e, std::span<const std::size_t> n,
                          double log_zg) {
    double log_w = -log_zg;
    for (std::size_t j = 0; j < n.size(); ++j) {
        log_w -= e.reduced_energy(j) * double(n[j]);
    }
    return std::exp(log_w);
}

}  // namespace

double fock_conditional_expectation(const FockEnsemble& e, std::span<const double> a,
                                    const Event& event) {
    if (a.size() != e.mode_count()) {
        throw DimensionMismatch("observable coefficient count does not match mode count");
    }
    const double log_zg = log_grand_partition(e);
    KahanSum num, den;
    for_each_occupation(e, [&](std::span<const std::size_t> n) {
        if (!event.admits(n)) return;
        const double p = vector_probability(e, n, log_zg);
        double obs = 0.0;
        for (std::size_t j = 0; j < n.size(); ++j) obs += a[j] * double(n[j]);
        num.add(obs * p);
        den.add(p);
    });
    if (den.value() <= k_zero_condition_tol) {
        throw ZeroConditionEvent("occupation event has probability <= 1e-14: " +
                                 event.describe());
    }
    return num.value() / den.value();
}

double grand_partition_enumerated(const FockEnsemble& e) {
    KahanSum sum;
    for_each_occupation(e, [&](std::span<const std::size_t> n) {
        double log_w = 0.0;
        for (std::size_t j = 0; j < n.size(); ++j) {
            log_w -= e.reduced_energy(j) * double(n[j]);
        }
        sum.add(std::exp(log_w));
    });
    return sum.value();
}

double ensemble_average_enumerated(const FockEnsemble& e, std::span<const double> a) {
    if (a.size() != e.mode_count()) {
        throw DimensionMismatch("observable coefficient count does not match mode count");
    }
    const double log_zg = log_grand_partition(e);
    KahanSum sum;
    for_each_occupation(e, [&](std::span<const std::size_t> n) {
        double obs = 0.0;
        for (std::size_t j = 0; j < n.size(); ++j) obs += a[j] * double(n[j]);
        sum.add(obs * vector_probability(e, n, log_zg));
    });
    return sum.value();
}

double equilibrium_state_expectation(const FockEnsemble& e, std::span<const double> a) {
    if (a.size() != e.mode_count()) {
        throw DimensionMismatch("observable coefficient count does not match mode count");
    }
    // Equilibrium coefficients are the real nonnegative square roots of the
    // per-mode occupation probabilities; phases are unobservable here.
    KahanSum sum;
    for_each_occupation(e, [&](std::span<const std::size_t> n) {
        double c = 1.0;
        for (std::size_t j = 0; j < n.size(); ++j) {
            c *= std::sqrt(occupation_probability(e, j, n[j]));
        }
        double obs = 0.0;
        for (std::size_t j = 0; j < n.size(); ++j) obs += a[j] * double(n[j]);
        sum.add(obs * c * c);
    });
    return sum.value();
}

}
