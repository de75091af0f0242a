#ifndef DEFICIT_DE_ENGINE_HPP
#define DEFICIT_DE_ENGINE_HPP

#include "deficit/deficit_problem.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace deficit::de {

/// A point of the decision space [0, 1]^n.
using CandidateVector = std::vector<double>;

/// Seeded source of every random draw in a run.
///
/// Draws are built directly from std::mt19937_64 output (whose sequence is
/// fixed by the standard) instead of the library distributions, so a seed
/// replays identically across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1] with 53-bit resolution.
    double unit() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on {0, ..., n - 1}; n must be positive.
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return static_cast<std::size_t>(r % bound);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// What the feasible-hit quota counts.
enum class QuotaCounting {
    FeasibleEvaluations,  // every evaluation that closes the deficit
    DistinctPlans,        // distinct archived plans
};

inline constexpr std::uint64_t kNoQuota = std::numeric_limits<std::uint64_t>::max();

struct SolverConfig {
    std::size_t population_size = 100;
    double scale_factor = 0.5;
    double crossover_rate = 0.9;
    std::uint64_t max_evaluations = 80000;
    std::uint64_t feasible_hits_to_stop = 100;
    std::uint64_t seed = 0;
    QuotaCounting quota_counting = QuotaCounting::FeasibleEvaluations;

    /// Throws ConfigError unless Np >= 4, F in (0, 2], CR in [0, 1],
    /// budget >= Np and quota >= 1.
    void validate() const;
};

/// Distinct feasible plans in the order they were first found.
class FeasibleArchive {
public:
    /// Returns false when the plan is already archived.
    bool insert(const SavingsPlan& plan);

    const std::vector<SavingsPlan>& plans() const noexcept { return plans_; }
    std::size_t size() const noexcept { return plans_.size(); }
    bool empty() const noexcept { return plans_.empty(); }
    bool contains(const SavingsPlan& plan) const { return seen_.contains(plan); }

private:
    std::vector<SavingsPlan> plans_;
    std::set<SavingsPlan> seen_;
};

enum class Termination { FeasibleQuota, EvaluationBudget };

std::string_view to_string(Termination t) noexcept;

struct RunResult {
    FeasibleArchive archive;
    std::uint64_t evaluations_used = 0;
    std::uint64_t feasible_hits = 0;
    std::uint64_t generations = 0;
    FitnessValue best_fitness{std::numeric_limits<Deciseconds>::max()};
    Termination terminated_by = Termination::EvaluationBudget;
};

/// Snapshot handed to a run observer after the initial population and after
/// every completed generation.
struct GenerationStats {
    std::uint64_t generation;
    std::uint64_t evaluations_used;
    std::uint64_t feasible_hits;
    FitnessValue best;
    std::span<const CandidateVector> population;
};

using GenerationObserver = std::function<void(const GenerationStats&)>;

/// "DE/rand/1/bin".
std::string_view strategy_name() noexcept;

/// Np vectors with coordinates drawn independently from (0, 1].
std::vector<CandidateVector> initialize_population(const SolverConfig& config, std::size_t n,
                                                   Rng& rng);

/// base + F * (a - b), clamped to [0, 1] per coordinate.
CandidateVector differential_mutation(const CandidateVector& base, const CandidateVector& a,
                                      const CandidateVector& b, double scale_factor);

/// rand/1 donor for `target_index`: r1, r2, r3 are drawn in that order by
/// rejection, mutually distinct and distinct from the target.
CandidateVector mutate(std::span<const CandidateVector> population, std::size_t target_index,
                       double scale_factor, Rng& rng);

/// Binomial crossover. Draws j_rand first, then one uniform per coordinate
/// (including j_rand); coordinate j comes from the donor when its draw is
/// <= CR or j == j_rand.
CandidateVector crossover(const CandidateVector& target, const CandidateVector& donor,
                          double crossover_rate, Rng& rng);

/// One-to-one selection; ties go to the trial.
const CandidateVector& select(const CandidateVector& target, const CandidateVector& trial,
                              FitnessValue f_target, FitnessValue f_trial) noexcept;

/// Runs DE/rand/1/bin on `problem` until the feasible quota is met or no
/// further full generation fits in the evaluation budget.
///
/// Generations are synchronous: every donor of generation t is built from
/// the population of generation t. The initial population counts against
/// the budget, and the quota is checked after every evaluation. The result
/// depends only on (config, problem).
///
/// Throws ConfigError for an invalid config and UnsolvableError when the
/// capacities cannot cover the target.
RunResult run(const SolverConfig& config, const DeficitProblem& problem,
              const GenerationObserver& observer = {});

} // namespace deficit::de

#endif // DEFICIT_DE_ENGINE_HPP
