#include "deficit/de_engine.hpp"

#include "deficit/error.hpp"

#include <algorithm>
#include <string>

namespace deficit::de {

void SolverConfig::validate() const {
    if (population_size < 4)
        throw ConfigError("population size must be at least 4, got " +
                          std::to_string(population_size));
    if (!(scale_factor > 0.0 && scale_factor <= 2.0))
        throw ConfigError("scale factor F must be in (0, 2], got " + std::to_string(scale_factor));
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw ConfigError("crossover rate CR must be in [0, 1], got " +
                          std::to_string(crossover_rate));
    if (max_evaluations < population_size)
        throw ConfigError("evaluation budget " + std::to_string(max_evaluations) +
                          " is smaller than the population size");
    if (feasible_hits_to_stop == 0) throw ConfigError("feasible quota must be at least 1");
}

bool FeasibleArchive::insert(const SavingsPlan& plan) {
    if (!seen_.insert(plan).second) return false;
    plans_.push_back(plan);
    return true;
}

std::string_view to_string(Termination t) noexcept {
    return t == Termination::FeasibleQuota ? "FeasibleQuota" : "EvaluationBudget";
}

std::string_view strategy_name() noexcept { return "DE/rand/1/bin"; }

std::vector<CandidateVector> initialize_population(const SolverConfig& config, std::size_t n,
                                                   Rng& rng) {
    std::vector<CandidateVector> pop(config.population_size, CandidateVector(n));
    for (auto& x : pop)
        for (auto& v : x) v = rng.unit();
    return pop;
}

CandidateVector differential_mutation(const CandidateVector& base, const CandidateVector& a,
                                      const CandidateVector& b, double scale_factor) {
    if (a.size() != base.size() || b.size() != base.size())
        throw ValidationError("differential_mutation: dimension mismatch");
    CandidateVector donor(base.size());
    for (std::size_t j = 0; j < base.size(); ++j)
        donor[j] = std::clamp(base[j] + scale_factor * (a[j] - b[j]), 0.0, 1.0);
    return donor;
}

CandidateVector mutate(std::span<const CandidateVector> population, std::size_t target_index,
                       double scale_factor, Rng& rng) {
    const std::size_t np = population.size();
    if (np < 4) throw ConfigError("mutation needs a population of at least 4");
    std::size_t r1, r2, r3;
    do r1 = rng.index(np); while (r1 == target_index);
    do r2 = rng.index(np); while (r2 == target_index || r2 == r1);
    do r3 = rng.index(np); while (r3 == target_index || r3 == r1 || r3 == r2);
    return differential_mutation(population[r1], population[r2], population[r3], scale_factor);
}

CandidateVector crossover(const CandidateVector& target, const CandidateVector& donor,
                          double crossover_rate, Rng& rng) {
    if (target.size() != donor.size()) throw ValidationError("crossover: dimension mismatch");
    if (target.empty()) return target;
    const std::size_t j_rand = rng.index(target.size());
    CandidateVector trial(target.size());
    for (std::size_t j = 0; j < target.size(); ++j) {
        const bool from_donor = rng.unit() <= crossover_rate || j == j_rand;
        trial[j] = from_donor ? donor[j] : target[j];
    }
    return trial;
}

const CandidateVector& select(const CandidateVector& target, const CandidateVector& trial,
                              FitnessValue f_target, FitnessValue f_trial) noexcept {
    return f_trial.value <= f_target.value ? trial : target;
}

namespace {

class Evaluator {
public:
    Evaluator(const SolverConfig& config, const DeficitProblem& problem, RunResult& result)
        : config_(config), problem_(problem), result_(result) {}

    FitnessValue operator()(const CandidateVector& x) {
        auto plan = map_decision(x, problem_);
        const auto f = fitness(plan, problem_);
        ++result_.evaluations_used;
        if (f.feasible()) {
            ++result_.feasible_hits;
            result_.archive.insert(plan);
        }
        result_.best_fitness = std::min(result_.best_fitness, f);
        return f;
    }

    bool quota_met() const noexcept {
        const std::uint64_t count = config_.quota_counting == QuotaCounting::DistinctPlans
                                        ? result_.archive.size()
                                        : result_.feasible_hits;
        return count >= config_.feasible_hits_to_stop;
    }

private:
    const SolverConfig& config_;
    const DeficitProblem& problem_;
    RunResult& result_;
};

} // namespace

RunResult run(const SolverConfig& config, const DeficitProblem& problem,
              const GenerationObserver& observer) {
    config.validate();
    require_solvable(problem);

    RunResult result;
    Evaluator evaluate(config, problem, result);
    Rng rng(config.seed);
    const std::size_t np = config.population_size;

    auto population = initialize_population(config, problem.dimension(), rng);
    std::vector<FitnessValue> scores;
    scores.reserve(np);
    for (const auto& x : population) {
        scores.push_back(evaluate(x));
        if (evaluate.quota_met()) {
            result.terminated_by = Termination::FeasibleQuota;
            return result;
        }
    }

    auto notify = [&] {
        if (observer)
            observer({result.generations, result.evaluations_used, result.feasible_hits,
                      *std::min_element(scores.begin(), scores.end()), population});
    };
    notify();

    auto next = population;
    auto next_scores = scores;
    while (result.evaluations_used + np <= config.max_evaluations) {
        for (std::size_t i = 0; i < np; ++i) {
            auto donor = mutate(population, i, config.scale_factor, rng);
            auto trial = crossover(population[i], donor, config.crossover_rate, rng);
            const auto f_trial = evaluate(trial);
            if (&select(population[i], trial, scores[i], f_trial) == &trial) {
                next[i] = std::move(trial);
                next_scores[i] = f_trial;
            } else {
                next[i] = population[i];
                next_scores[i] = scores[i];
            }
            if (evaluate.quota_met()) {
                result.terminated_by = Termination::FeasibleQuota;
                return result;
            }
        }
        std::swap(population, next);
        std::swap(scores, next_scores);
        ++result.generations;
        notify();
    }
    result.terminated_by = Termination::EvaluationBudget;
    return result;
}

} // namespace deficit::de
