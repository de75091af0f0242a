#include "deficit/deficit_problem.hpp"

#include "deficit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace deficit {

DeficitProblem::DeficitProblem(Deciseconds target, std::vector<Deciseconds> capacities)
    : target_(target), capacities_(std::move(capacities)) {
    if (target_ < 0) throw ValidationError("deficit target must be non-negative");
    if (capacities_.empty()) throw ValidationError("deficit problem needs at least one segment");
    for (std::size_t j = 0; j < capacities_.size(); ++j) {
        if (capacities_[j] < 0)
            throw ValidationError("capacity of segment " + std::to_string(j + 1) +
                                  " is negative");
        total_capacity_ += capacities_[j];
    }
}

Deciseconds SavingsPlan::total() const noexcept {
    return std::accumulate(savings.begin(), savings.end(), Deciseconds{0});
}

std::vector<Deciseconds> capacities_from_classes(std::span<const SegmentClass> classes,
                                                 bool final_is_partial) {
    if (classes.empty()) throw ValidationError("capacities_from_classes: no segments");
    std::vector<Deciseconds> caps;
    caps.reserve(classes.size());
    for (auto c : classes) {
        switch (c) {
        case SegmentClass::Flat: caps.push_back(20); break;
        case SegmentClass::Downhill: caps.push_back(40); break;
        case SegmentClass::Uphill: caps.push_back(0); break;
        }
    }
    if (final_is_partial) caps.back() = 0;
    return caps;
}

bool check_solvable(const DeficitProblem& problem) noexcept {
    return problem.total_capacity() >= problem.target();
}

void require_solvable(const DeficitProblem& problem) {
    if (check_solvable(problem)) return;
    throw UnsolvableError(
        "solvability condition violated: summed capacities " +
        std::to_string(problem.total_capacity()) + " ds cannot cover the deficit of " +
        std::to_string(problem.target()) + " ds (short by " +
        std::to_string(problem.target() - problem.total_capacity()) + " ds)");
}

SavingsPlan map_decision(std::span<const double> x, const DeficitProblem& problem) {
    const auto& caps = problem.capacities();
    if (x.size() != caps.size())
        throw ValidationError("map_decision: dimension mismatch (" + std::to_string(x.size()) +
                              " vs " + std::to_string(caps.size()) + ")");
    // Products that land within rounding noise of an integer count as that
    // integer, so e.g. 0.7 * 10 maps to 7 and not 8.
    constexpr double snap = 1e-9;
    SavingsPlan plan;
    plan.savings.resize(caps.size());
    for (std::size_t j = 0; j < caps.size(); ++j) {
        if (!(x[j] >= 0.0 && x[j] <= 1.0))
            throw ValidationError("map_decision: coordinate " + std::to_string(j) +
                                  " outside [0, 1]");
        const double scaled = static_cast<double>(caps[j]) * x[j];
        const auto saving = static_cast<Deciseconds>(std::ceil(scaled - snap));
        plan.savings[j] = std::clamp<Deciseconds>(saving, 0, caps[j]);
    }
    return plan;
}

FitnessValue fitness(const SavingsPlan& plan, const DeficitProblem& problem) {
    const Deciseconds saved = plan.total();
    const Deciseconds target = problem.target();
    if (saved <= target) return {target - saved};
    return {kOvershootPenalty * (saved - target)};
}

std::vector<KmSplit> apply_plan(std::span<const KmSplit> splits, const SavingsPlan& plan) {
    if (splits.size() != plan.savings.size())
        throw ValidationError("apply_plan: " + std::to_string(plan.savings.size()) +
                              " savings for " + std::to_string(splits.size()) + " splits");
    std::vector<KmSplit> out(splits.begin(), splits.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const auto saving = plan.savings[j];
        if (saving < 0)
            throw ValidationError("apply_plan: negative saving at segment " +
                                  std::to_string(out[j].index));
        if (saving >= out[j].pace)
            throw ValidationError("apply_plan: saving at segment " + std::to_string(out[j].index) +
                                  " is not smaller than its pace");
        out[j].pace -= saving;
    }
    return out;
}

Deciseconds total_time(std::span<const KmSplit> splits) {
    if (splits.empty()) throw ValidationError("total_time: no splits");
    Deciseconds sum = 0;
    for (const auto& s : splits) sum += s.pace;
    return sum;
}

} // namespace deficit
