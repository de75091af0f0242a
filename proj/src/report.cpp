#include "deficit/report.hpp"

#include "csv.hpp"
#include "deficit/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace deficit {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

OutputFormat parse_output_format(std::string_view name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw ValidationError("unknown output format '" + std::string(name) + "'");
}

Deciseconds resolve_target(const TargetSpec& spec) {
    return std::visit(overloaded{
                          [](Deciseconds d) {
                              if (d < 0) throw ValidationError("deficit must be non-negative");
                              return d;
                          },
                          [](const GoalPair& p) {
                              if (p.actual < p.goal)
                                  throw ValidationError(
                                      "no deficit to make up: goal " + format_duration(p.goal) +
                                      " is slower than the achieved " +
                                      format_duration(p.actual));
                              const Deciseconds d = p.actual - p.goal;
                              return p.round_up_to_second ? (d + 9) / 10 * 10 : d;
                          },
                      },
                      spec);
}

std::vector<Deciseconds> parse_bounds_csv(std::string_view bytes) {
    const auto rows = csv::read(bytes, "index,capacity_ds");
    std::vector<Deciseconds> caps;
    caps.reserve(rows.size());
    for (const auto& row : rows) {
        const auto index = csv::to_int(row.fields[0], row.number, "index");
        const auto expected = static_cast<std::int64_t>(caps.size()) + 1;
        if (index != expected)
            throw ParseError(row.number, "index",
                             "expected index " + std::to_string(expected) + ", found " +
                                 std::to_string(index));
        const auto cap = csv::to_int(row.fields[1], row.number, "capacity_ds");
        if (cap < 0) throw ParseError(row.number, "capacity_ds", "must be non-negative");
        caps.push_back(cap);
    }
    return caps;
}

std::vector<Deciseconds> derive_capacities(std::span<const KmSplit> splits) {
    std::vector<SegmentClass> classes;
    classes.reserve(splits.size());
    for (const auto& s : splits) classes.push_back(classify_segment(s.alt_delta));
    return capacities_from_classes(classes, !splits.empty() && splits.back().is_partial());
}

DeficitProblem assemble_problem(std::span<const KmSplit> splits,
                                const std::optional<std::vector<Deciseconds>>& capacities,
                                const TargetSpec& target) {
    if (splits.empty()) throw ValidationError("splits file contains no segments");
    std::vector<Deciseconds> caps;
    if (capacities) {
        caps = *capacities;
        if (caps.size() != splits.size())
            throw ValidationError("bounds file has " + std::to_string(caps.size()) +
                                  " segments but the splits file has " +
                                  std::to_string(splits.size()));
        if (splits.back().is_partial() && caps.back() != 0)
            throw ValidationError("the final partial segment must have capacity 0");
    } else {
        caps = derive_capacities(splits);
    }
    return DeficitProblem(resolve_target(target), std::move(caps));
}

RaceInputs load_inputs(const RunRequest& request) {
    auto splits = parse_splits_csv(read_file(request.splits_path));
    std::optional<std::vector<Deciseconds>> caps;
    if (const auto* file = std::get_if<BoundsFile>(&request.bounds))
        caps = parse_bounds_csv(read_file(file->path));
    auto problem = assemble_problem(splits, caps, request.target);
    require_solvable(problem);
    return {std::move(splits), std::move(problem)};
}

DeficitProblem build_problem(const RunRequest& request) { return load_inputs(request).problem; }

std::vector<ReportRow> make_report_rows(std::span<const KmSplit> splits, const SavingsPlan& plan,
                                        const DeficitProblem& problem) {
    if (splits.size() != problem.dimension() || plan.savings.size() != problem.dimension())
        throw ValidationError("report: splits, plan and problem disagree on the segment count");
    if (!fitness(plan, problem).feasible())
        throw ValidationError("refusing to report an infeasible plan: it saves " +
                              std::to_string(plan.total()) + " ds of a " +
                              std::to_string(problem.target()) + " ds deficit");
    const auto predicted = apply_plan(splits, plan);

    std::vector<ReportRow> rows;
    rows.reserve(splits.size());
    double meters = 0.0;
    for (std::size_t j = 0; j < splits.size(); ++j) {
        const auto cap = problem.capacities()[j];
        if (plan.savings[j] > cap)
            throw ValidationError("report: saving at segment " + std::to_string(splits[j].index) +
                                  " exceeds its capacity");
        meters += splits[j].length;
        rows.push_back({meters / 1000.0, splits[j].pace, predicted[j].pace, plan.savings[j], cap});
    }
    return rows;
}

std::string format_distance_km(double km) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", km);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

namespace {

std::string render_table(const std::vector<ReportRow>& rows) {
    static constexpr int widths[] = {8, 13, 14, 14, 16, 16};
    std::ostringstream out;
    auto line = [&](std::initializer_list<std::string> cells) {
        int c = 0;
        std::string sep;
        for (const auto& cell : cells) {
            out << sep << std::setw(widths[c++]) << cell;
            sep = " | ";
        }
        out << '\n';
    };
    line({"Distance", "Actual pace", "Predicted pace", "Difference", "Lower bounds", "Upper bounds"});
    line({"[km]", "[min/km]", "[min/km]", "[sec]", "[sec]", "[sec]"});
    out << std::string(8 + 13 + 14 + 14 + 16 + 16 + 5 * 3, '-') << '\n';

    Deciseconds actual = 0, predicted = 0, difference = 0, capacity = 0;
    for (const auto& r : rows) {
        line({format_distance_km(r.distance_km), format_duration_sheet(r.actual_pace),
              format_duration_sheet(r.predicted_pace), format_seconds(r.difference),
              format_seconds(r.capacity), format_seconds(0)});
        actual += r.actual_pace;
        predicted += r.predicted_pace;
        difference += r.difference;
        capacity += r.capacity;
    }
    out << std::string(8 + 13 + 14 + 14 + 16 + 16 + 5 * 3, '-') << '\n';
    line({"Total:", format_duration_sheet(actual), format_duration_sheet(predicted),
          format_seconds(difference, true), format_seconds(capacity, true),
          format_seconds(0, true)});
    return out.str();
}

nlohmann::json plan_document(const SavingsPlan& plan, const DeficitProblem& problem) {
    return {{"savings_ds", plan.savings},
            {"total_ds", plan.total()},
            {"feasible", plan.savings.size() == problem.dimension() &&
                             fitness(plan, problem).feasible()}};
}

} // namespace

std::string render_report(std::span<const KmSplit> splits, const SavingsPlan& plan,
                          const DeficitProblem& problem, OutputFormat format) {
    const auto rows = make_report_rows(splits, plan, problem);
    switch (format) {
    case OutputFormat::Table: return render_table(rows);
    case OutputFormat::Csv: {
        std::string out = "km,actual_pace_ds,predicted_pace_ds,difference_ds,capacity_ds\n";
        for (const auto& r : rows)
            out += format_distance_km(r.distance_km) + ',' + std::to_string(r.actual_pace) + ',' +
                   std::to_string(r.predicted_pace) + ',' + std::to_string(r.difference) + ',' +
                   std::to_string(r.capacity) + '\n';
        return out;
    }
    case OutputFormat::Json: {
        auto doc = plan_document(plan, problem);
        doc["target_ds"] = problem.target();
        auto& jrows = doc["rows"] = nlohmann::json::array();
        Deciseconds actual = 0, predicted = 0, capacity = 0;
        for (const auto& r : rows) {
            jrows.push_back({{"km", format_distance_km(r.distance_km)},
                             {"actual_pace_ds", r.actual_pace},
                             {"predicted_pace_ds", r.predicted_pace},
                             {"difference_ds", r.difference},
                             {"capacity_ds", r.capacity}});
            actual += r.actual_pace;
            predicted += r.predicted_pace;
            capacity += r.capacity;
        }
        doc["totals"] = {{"actual_ds", actual},
                         {"predicted_ds", predicted},
                         {"difference_ds", plan.total()},
                         {"capacity_ds", capacity}};
        return doc.dump(2) + '\n';
    }
    }
    return {};
}

std::string emit_plot_data(std::span<const KmSplit> splits, const SavingsPlan& plan) {
    if (splits.size() != plan.savings.size())
        throw ValidationError("plot data: " + std::to_string(plan.savings.size()) +
                              " savings for " + std::to_string(splits.size()) + " splits");
    const auto predicted = apply_plan(splits, plan);
    std::string out = "km,actual_pace_ds,predicted_pace_ds,alt_delta_m,saving_ds\n";
    double meters = 0.0;
    char alt[32];
    for (std::size_t j = 0; j < splits.size(); ++j) {
        meters += splits[j].length;
        std::snprintf(alt, sizeof alt, "%.1f", splits[j].alt_delta);
        out += format_distance_km(meters / 1000.0) + ',' + std::to_string(splits[j].pace) + ',' +
               std::to_string(predicted[j].pace) + ',' + alt + ',' +
               std::to_string(plan.savings[j]) + '\n';
    }
    return out;
}

std::string plan_to_json(const SavingsPlan& plan, const DeficitProblem& problem) {
    return plan_document(plan, problem).dump();
}

SavingsPlan plan_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, "plan", e.what());
    }
    if (!doc.is_object() || !doc.contains("savings_ds") || !doc["savings_ds"].is_array())
        throw ParseError(0, "savings_ds", "missing or not an array");
    SavingsPlan plan;
    for (const auto& v : doc["savings_ds"]) {
        if (!v.is_number_integer()) throw ParseError(0, "savings_ds", "entries must be integers");
        plan.savings.push_back(v.get<Deciseconds>());
    }
    if (doc.contains("total_ds") && doc["total_ds"] != plan.total())
        throw ParseError(0, "total_ds", "does not match the sum of savings_ds");
    return plan;
}

std::string run_report_json(const de::SolverConfig& config, const de::RunResult& result,
                            const DeficitProblem& problem) {
    nlohmann::json plans = nlohmann::json::array();
    for (const auto& p : result.archive.plans()) plans.push_back(plan_document(p, problem));
    nlohmann::json doc = {
        {"strategy", std::string(de::strategy_name())},
        {"np", config.population_size},
        {"f", config.scale_factor},
        {"cr", config.crossover_rate},
        {"seed", config.seed},
        {"evaluations", result.evaluations_used},
        {"feasible_hits", result.feasible_hits},
        {"terminated_by", std::string(de::to_string(result.terminated_by))},
        {"plans", std::move(plans)},
    };
    return doc.dump(2) + '\n';
}

BatchResult run_batch(const de::SolverConfig& config, const DeficitProblem& problem,
                      std::uint64_t first_seed, std::uint64_t last_seed, unsigned threads) {
    if (last_seed < first_seed) throw ValidationError("seed range is empty");
    config.validate();
    require_solvable(problem);

    BatchResult batch;
    for (auto s = first_seed;; ++s) {
        batch.seeds.push_back(s);
        if (s == last_seed) break;
    }
    batch.runs.resize(batch.seeds.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < batch.seeds.size();) {
            auto cfg = config;
            cfg.seed = batch.seeds[k];
            batch.runs[k] = de::run(cfg, problem);
        }
    };
    const unsigned n = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(batch.seeds.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (const auto& r : batch.runs)
        for (const auto& p : r.archive.plans()) batch.merged.insert(p);
    return batch;
}

} // namespace deficit
