// deficit: find per-kilometer time savings that close a marathon deficit.
//
//   deficit run   --splits <csv> [--bounds <csv> | --derive-bounds] <target> [solver flags]
//   deficit check --splits <csv> [--bounds <csv> | --derive-bounds] <target>
//
// Exit codes: 0 run met its feasible quota (or check found the problem
// solvable), 1 input or validation error, 2 evaluation budget exhausted.

#include "deficit/error.hpp"
#include "deficit/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

struct Options {
    std::string splits;
    std::string bounds;
    bool derive_bounds = false;
    std::int64_t deficit_ds = -1;
    std::string actual;
    std::string goal;
    bool paper_rounding = false;
    deficit::de::SolverConfig solver;
    std::string format = "table";
    std::string plot_data;
    std::size_t plan_index = 0;
    bool all_plans = false;
    bool quota_distinct = false;
    std::string seeds;
    unsigned threads = 0;
};

void add_input_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--splits", o.splits, "Per-kilometer splits CSV")->required()->check(CLI::ExistingFile);
    auto* bounds = cmd.add_option("--bounds", o.bounds, "Per-segment capacity CSV")->check(CLI::ExistingFile);
    auto* derive = cmd.add_flag("--derive-bounds", o.derive_bounds,
                                "Derive capacities from altitude deltas (default)");
    bounds->excludes(derive);

    auto* deficit = cmd.add_option("--deficit-ds", o.deficit_ds, "Deficit in deciseconds");
    auto* actual = cmd.add_option("--actual", o.actual, "Achieved finish time, [H:]MM:SS.d");
    auto* goal = cmd.add_option("--goal", o.goal, "Goal finish time, [H:]MM:SS.d");
    auto* rounding = cmd.add_flag("--paper-rounding", o.paper_rounding,
                                  "Round the actual-goal deficit up to whole seconds");
    deficit->excludes(actual)->excludes(goal)->excludes(rounding);
    actual->needs(goal);
    goal->needs(actual);
    rounding->needs(actual);
}

deficit::RunRequest make_request(const Options& o) {
    using namespace deficit;
    RunRequest req;
    req.splits_path = o.splits;
    if (!o.bounds.empty()) req.bounds = BoundsFile{o.bounds};
    if (!o.actual.empty())
        req.target = GoalPair{parse_duration(o.actual), parse_duration(o.goal), o.paper_rounding};
    else if (o.deficit_ds >= 0)
        req.target = Deciseconds{o.deficit_ds};
    else
        throw ValidationError("give the deficit with --deficit-ds or --actual/--goal");
    req.solver = o.solver;
    if (o.quota_distinct) req.solver.quota_counting = de::QuotaCounting::DistinctPlans;
    req.output_format = parse_output_format(o.format);
    return req;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw deficit::ValidationError("--seeds expects a..b");
    try {
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw deficit::ValidationError("--seeds expects a..b, got '" + text + "'");
    }
}

int cmd_check(const Options& o) {
    using namespace deficit;
    auto req = make_request(o);
    std::ifstream in(req.splits_path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    auto splits = parse_splits_csv(text);
    std::optional<std::vector<Deciseconds>> caps;
    if (const auto* f = std::get_if<BoundsFile>(&req.bounds)) {
        std::ifstream bin(f->path, std::ios::binary);
        caps = parse_bounds_csv(std::string((std::istreambuf_iterator<char>(bin)), {}));
    }
    const auto problem = assemble_problem(splits, caps, req.target);
    std::cout << "segments: " << problem.dimension() << '\n'
              << "deficit: " << problem.target() << " ds (" << format_seconds(problem.target())
              << " s)\n"
              << "capacity: " << problem.total_capacity() << " ds ("
              << format_seconds(problem.total_capacity()) << " s)\n";
    require_solvable(problem);
    std::cout << "solvable: yes\n";
    return 0;
}

int cmd_run(const Options& o) {
    using namespace deficit;
    const auto req = make_request(o);
    const auto inputs = load_inputs(req);

    std::vector<SavingsPlan> plans;
    bool quota_met = false;
    std::string run_json;
    if (!o.seeds.empty()) {
        const auto [first, last] = parse_seed_range(o.seeds);
        const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
        const auto batch = run_batch(req.solver, inputs.problem, first, last, threads);
        quota_met = true;
        for (std::size_t k = 0; k < batch.runs.size(); ++k) {
            const auto& r = batch.runs[k];
            std::cerr << de::strategy_name() << " seed=" << batch.seeds[k]
                      << " evaluations=" << r.evaluations_used << " feasible_hits=" << r.feasible_hits
                      << " terminated_by=" << de::to_string(r.terminated_by) << '\n';
            quota_met = quota_met && r.terminated_by == de::Termination::FeasibleQuota;
            auto cfg = req.solver;
            cfg.seed = batch.seeds[k];
            run_json += run_report_json(cfg, r, inputs.problem);
        }
        plans = batch.merged.plans();
        std::cerr << "merged archive: " << plans.size() << " distinct plans\n";
    } else {
        const auto result = de::run(req.solver, inputs.problem);
        std::cerr << de::strategy_name() << " seed=" << req.solver.seed
                  << " evaluations=" << result.evaluations_used
                  << " feasible_hits=" << result.feasible_hits
                  << " archived=" << result.archive.size()
                  << " terminated_by=" << de::to_string(result.terminated_by) << '\n';
        quota_met = result.terminated_by == de::Termination::FeasibleQuota;
        plans = result.archive.plans();
        run_json = run_report_json(req.solver, result, inputs.problem);
    }

    if (o.all_plans) {
        std::cout << run_json;
    } else if (!plans.empty()) {
        if (o.plan_index >= plans.size())
            throw ValidationError("--plan-index " + std::to_string(o.plan_index) + " out of range (" +
                                  std::to_string(plans.size()) + " plans archived)");
        const auto& plan = plans[o.plan_index];
        std::cout << render_report(inputs.splits, plan, inputs.problem, req.output_format);
        if (!o.plot_data.empty()) {
            std::ofstream out(o.plot_data, std::ios::binary);
            if (!out) throw ValidationError("cannot write '" + o.plot_data + "'");
            out << emit_plot_data(inputs.splits, plan);
        }
    }
    if (plans.empty()) std::cerr << "no feasible plan found within the evaluation budget\n";
    return quota_met ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Close a marathon time deficit with per-kilometer savings found by Differential Evolution"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "Search for feasible savings plans");
    add_input_options(*run, o);
    run->add_option("--np", o.solver.population_size, "Population size")->capture_default_str();
    run->add_option("--f", o.solver.scale_factor, "Scale factor F")->capture_default_str();
    run->add_option("--cr", o.solver.crossover_rate, "Crossover rate CR")->capture_default_str();
    run->add_option("--quota", o.solver.feasible_hits_to_stop, "Feasible hits that stop the run")
        ->capture_default_str();
    run->add_flag("--quota-distinct", o.quota_distinct, "Count distinct plans toward the quota");
    run->add_option("--budget", o.solver.max_evaluations, "Fitness evaluation budget")->capture_default_str();
    auto* seed = run->add_option("--seed", o.solver.seed, "Random seed")->capture_default_str();
    auto* seeds = run->add_option("--seeds", o.seeds, "Batch of seeds a..b, archives merged in seed order");
    seed->excludes(seeds);
    run->add_option("--threads", o.threads, "Worker threads for --seeds (default: all cores)");
    run->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    run->add_option("--plot-data", o.plot_data, "Write per-segment plot data CSV here");
    auto* index = run->add_option("--plan-index", o.plan_index, "Render the archived plan at this 0-based index");
    auto* all = run->add_flag("--all-plans", o.all_plans, "Print the run report JSON with every archived plan");
    index->excludes(all);

    auto* check = app.add_subcommand("check", "Validate inputs and report solvability");
    add_input_options(*check, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(o);
        return cmd_check(o);
    } catch (const deficit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
