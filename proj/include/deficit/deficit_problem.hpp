#ifndef DEFICIT_DEFICIT_PROBLEM_HPP
#define DEFICIT_DEFICIT_PROBLEM_HPP

#include "deficit/duration.hpp"
#include "deficit/track_ingest.hpp"

#include <span>
#include <vector>

namespace deficit {

/// Time that must be made up, with the per-segment room for making it up.
///
/// A capacity is the largest saving a segment can contribute (0 s uphill,
/// 2 s flat, 4 s downhill when derived from altitude). Savings are stored as
/// non-negative "time shaved off", so a plan lives in the box
/// [0, capacity[j]] for every segment j.
class DeficitProblem {
public:
    DeficitProblem(Deciseconds target, std::vector<Deciseconds> capacities);

    Deciseconds target() const noexcept { return target_; }
    const std::vector<Deciseconds>& capacities() const noexcept { return capacities_; }
    std::size_t dimension() const noexcept { return capacities_.size(); }
    Deciseconds total_capacity() const noexcept { return total_capacity_; }

private:
    Deciseconds target_;
    std::vector<Deciseconds> capacities_;
    Deciseconds total_capacity_ = 0;
};

/// Per-segment savings in deciseconds.
struct SavingsPlan {
    std::vector<Deciseconds> savings;

    Deciseconds total() const noexcept;

    friend auto operator<=>(const SavingsPlan&, const SavingsPlan&) = default;
};

/// Gap to the target; zero exactly when the plan closes the deficit.
struct FitnessValue {
    Deciseconds value = 0;

    bool feasible() const noexcept { return value == 0; }

    friend auto operator<=>(const FitnessValue&, const FitnessValue&) = default;
};

/// Multiplier applied to every decisecond a plan saves beyond the target.
inline constexpr Deciseconds kOvershootPenalty = 100;

/// Flat -> 20 ds, Downhill -> 40 ds, Uphill -> 0 ds. A trailing partial
/// segment is excluded from optimization and always gets 0.
std::vector<Deciseconds> capacities_from_classes(std::span<const SegmentClass> classes,
                                                 bool final_is_partial);

/// True iff the summed capacities cover the target.
bool check_solvable(const DeficitProblem& problem) noexcept;

/// Throws UnsolvableError, stating the capacity shortfall, unless solvable.
void require_solvable(const DeficitProblem& problem);

/// Maps a point of the unit hypercube to a savings plan:
/// savings[j] = ceil(capacity[j] * x[j]), i.e. 0.1 s resolution.
SavingsPlan map_decision(std::span<const double> x, const DeficitProblem& problem);

/// target - S when the plan saves S <= target, kOvershootPenalty * (S - target)
/// otherwise.
FitnessValue fitness(const SavingsPlan& plan, const DeficitProblem& problem);

/// Predicted splits: each pace reduced by the planned saving.
std::vector<KmSplit> apply_plan(std::span<const KmSplit> splits, const SavingsPlan& plan);

/// Sum of all paces.
Deciseconds total_time(std::span<const KmSplit> splits);

} // namespace deficit

#endif // DEFICIT_DEFICIT_PROBLEM_HPP
