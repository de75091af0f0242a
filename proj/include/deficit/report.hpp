#ifndef DEFICIT_REPORT_HPP
#define DEFICIT_REPORT_HPP

#include "deficit/de_engine.hpp"
#include "deficit/deficit_problem.hpp"
#include "deficit/track_ingest.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deficit {

enum class OutputFormat { Table, Json, Csv };

/// "table", "json" or "csv".
OutputFormat parse_output_format(std::string_view name);

/// Achieved and goal finish times. With `round_up_to_second` the deficit is
/// rounded up to whole seconds (1:09.4 becomes 70 s).
struct GoalPair {
    Deciseconds actual = 0;
    Deciseconds goal = 0;
    bool round_up_to_second = false;
};

using TargetSpec = std::variant<Deciseconds, GoalPair>;

/// Throws ValidationError when the goal is slower than the achieved time.
Deciseconds resolve_target(const TargetSpec& spec);

struct DeriveFromAltitude {};
struct BoundsFile {
    std::string path;
};
using BoundsSource = std::variant<DeriveFromAltitude, BoundsFile>;

struct RunRequest {
    std::string splits_path;
    BoundsSource bounds = DeriveFromAltitude{};
    TargetSpec target = Deciseconds{0};
    de::SolverConfig solver;
    OutputFormat output_format = OutputFormat::Table;
};

/// Reads a bounds CSV with header `index,capacity_ds`.
std::vector<Deciseconds> parse_bounds_csv(std::string_view bytes);

/// Classifies each split by its altitude change and maps the classes to
/// capacities; a trailing partial split gets capacity 0.
std::vector<Deciseconds> derive_capacities(std::span<const KmSplit> splits);

/// Builds the problem from already-parsed inputs without the solvability
/// check. File capacities must match the split count, and a trailing
/// partial split must have capacity 0.
DeficitProblem assemble_problem(std::span<const KmSplit> splits,
                                const std::optional<std::vector<Deciseconds>>& capacities,
                                const TargetSpec& target);

struct RaceInputs {
    std::vector<KmSplit> splits;
    DeficitProblem problem;
};

/// Loads the request's files and assembles a solvable problem. Throws
/// UnsolvableError when the capacities cannot cover the target.
RaceInputs load_inputs(const RunRequest& request);

DeficitProblem build_problem(const RunRequest& request);

struct ReportRow {
    double distance_km = 0.0;
    Deciseconds actual_pace = 0;
    Deciseconds predicted_pace = 0;
    Deciseconds difference = 0;
    Deciseconds capacity = 0;
};

/// One row per split. Throws ValidationError unless the plan is feasible
/// for `problem` and fits its bounds.
std::vector<ReportRow> make_report_rows(std::span<const KmSplit> splits, const SavingsPlan& plan,
                                        const DeficitProblem& problem);

/// Cumulative distance as printed in reports: `42`, `42.195`.
std::string format_distance_km(double km);

std::string render_report(std::span<const KmSplit> splits, const SavingsPlan& plan,
                          const DeficitProblem& problem, OutputFormat format);

/// CSV `km,actual_pace_ds,predicted_pace_ds,alt_delta_m,saving_ds`.
std::string emit_plot_data(std::span<const KmSplit> splits, const SavingsPlan& plan);

/// `{"savings_ds": [...], "total_ds": S, "feasible": bool}`.
std::string plan_to_json(const SavingsPlan& plan, const DeficitProblem& problem);

/// Reads the `savings_ds` array of a plan document and checks `total_ds`.
SavingsPlan plan_from_json(std::string_view text);

/// Machine-readable summary of a run including every archived plan.
std::string run_report_json(const de::SolverConfig& config, const de::RunResult& result,
                            const DeficitProblem& problem);

struct BatchResult {
    std::vector<std::uint64_t> seeds;
    std::vector<de::RunResult> runs;  // same order as `seeds`
    de::FeasibleArchive merged;       // archives merged in seed order
};

/// Independent runs for seeds first..last (inclusive), optionally on several
/// threads. The merged archive does not depend on the thread count.
BatchResult run_batch(const de::SolverConfig& config, const DeficitProblem& problem,
                      std::uint64_t first_seed, std::uint64_t last_seed, unsigned threads = 1);

} // namespace deficit

#endif // DEFICIT_REPORT_HPP
