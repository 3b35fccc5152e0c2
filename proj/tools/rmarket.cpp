#include <CLI11.hpp>

#include <rmarket/auction.hpp>
#include <rmarket/crisis.hpp>
#include <rmarket/frustration.hpp>
#include <rmarket/oracle.hpp>
#include <rmarket/report.hpp>
#include <rmarket/scenario.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace rmarket;

// 0 ok, 1 bad input (usage, parse, validity), 2 solver defect, 3 enabled
// check failed.  By default only structural checks gate the exit status;
// --strict promotes every guarantee-level check and metric cap to a failure.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitChecks = 3;

// accounting identities that must hold for any well-formed solution; the
// rest of the report is guarantee-level and only gates the exit under --strict
bool structural_check(const std::string& name) {
    return name == "baskets_shape" || name == "good_conserved" ||
           name == "rights_within_issue" || name == "money_conserved";
}

int exit_for(const VerificationReport& report, bool strict) {
    for (const auto& c : report.checks) {
        if (c.pass) continue;
        if (strict || structural_check(c.name)) return kExitChecks;
    }
    return kExitOk;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

std::filesystem::path prepare_out(const std::string& dir) {
    std::filesystem::path out(dir);
    std::filesystem::create_directories(out);
    return out;
}

template <class Writer>
std::string rendered(Writer&& writer) {
    std::ostringstream os;
    writer(os);
    return os.str();
}

int run_solve(const std::string& scenario_path, const std::string& out_dir,
              const std::string& format, bool strict, bool deep_checks) {
    Scenario sc = load_scenario_file(scenario_path);

    SolverConfig config;
    config.deep_checks = deep_checks;
    config.willingness = sc.willingness;
    AuctionState state = initialize(sc.spec, config);
    Solution solution = solve(state);

    bool capped = !sc.willingness.empty();
    VerificationReport verification =
        verify_solution(sc.spec, solution, &solution.stats, capped);
    FrustrationReport frustration = frustration_report(sc.spec, solution, state.trace);

    auto out = prepare_out(out_dir);
    write_file(out / "solution.json",
               rendered([&](std::ostream& os) { write_solution_json(os, solution); }));
    write_file(out / "stats.json",
               rendered([&](std::ostream& os) { write_stats_json(os, solution.stats); }));
    write_file(out / "trace.jsonl",
               rendered([&](std::ostream& os) { write_trace(os, state.trace); }));
    write_file(out / "verification.json", rendered([&](std::ostream& os) {
                   write_verification_json(os, verification);
               }));
    if (format == "csv")
        write_file(out / "frustration.csv", rendered([&](std::ostream& os) {
                       write_frustration_csv(os, frustration);
                   }));
    else
        write_file(out / "frustration.json", rendered([&](std::ostream& os) {
                       write_frustration_json(os, frustration);
                   }));

    std::string summary = solve_summary(sc.spec, solution, verification, frustration);
    write_file(out / "summary.txt", summary);
    std::cout << summary;

    int code = exit_for(verification, strict);
    if (strict && frustration.max_potential_frustration > Rat(1, 2)) {
        std::cout << "potential frustration exceeds 1/2\n";
        code = kExitChecks;
    }
    return code;
}

int run_crisis_cmd(const std::string& scenario_path, const std::string& out_dir,
                   const std::string& format, bool strict) {
    Scenario sc = load_scenario_file(scenario_path);

    CrisisConfig config;
    config.rounds = sc.rounds;
    config.initial_willingness = sc.willingness;
    CrisisResult result = run_crisis(sc.spec, config);
    CrisisChecks checks = check_crisis(result);

    auto out = prepare_out(out_dir);
    if (format == "csv")
        write_file(out / "rounds.csv", rendered([&](std::ostream& os) {
                       write_crisis_rounds_csv(os, result);
                   }));
    else
        write_file(out / "rounds.jsonl", rendered([&](std::ostream& os) {
                       write_crisis_rounds_jsonl(os, result);
                   }));
    write_file(out / "checks.json",
               rendered([&](std::ostream& os) { write_crisis_checks_json(os, checks); }));

    std::string summary = crisis_summary(sc.spec, result, checks);
    write_file(out / "summary.txt", summary);
    std::cout << summary;

    return strict && !checks.ok() ? kExitChecks : kExitOk;
}

int run_gen(const GenConfig& config, const std::string& out_dir) {
    Scenario sc = generate_scenario(config);
    if (out_dir.empty()) {
        save_scenario(std::cout, sc);
    } else {
        auto out = prepare_out(out_dir);
        write_file(out / "scenario.json",
                   rendered([&](std::ostream& os) { save_scenario(os, sc); }));
        std::cout << (out / "scenario.json").string() << '\n';
    }
    return kExitOk;
}

int run_verify(const std::string& solution_path, const std::string& scenario_path,
               const std::string& out_dir, bool strict) {
    Scenario sc = load_scenario_file(scenario_path);
    std::ifstream in(solution_path);
    if (!in) throw std::runtime_error("cannot read " + solution_path);
    Solution solution = read_solution_json(in);

    bool capped = !sc.willingness.empty();
    VerificationReport verification = verify_solution(sc.spec, solution, nullptr, capped);
    std::string bytes = rendered(
        [&](std::ostream& os) { write_verification_json(os, verification); });
    if (!out_dir.empty()) write_file(prepare_out(out_dir) / "verification.json", bytes);
    std::cout << bytes;
    return exit_for(verification, strict);
}

int run_replay(const std::string& trace_path, const std::string& out_dir,
               const std::string& expect_path) {
    std::ifstream in(trace_path);
    if (!in) throw std::runtime_error("cannot read " + trace_path);
    auto events = read_trace(in);
    Solution solution = replay_trace(events);

    std::string bytes =
        rendered([&](std::ostream& os) { write_solution_json(os, solution); });
    if (!out_dir.empty()) write_file(prepare_out(out_dir) / "solution.json", bytes);
    std::cout << bytes;

    if (!expect_path.empty()) {
        std::ifstream expect_in(expect_path);
        if (!expect_in) throw std::runtime_error("cannot read " + expect_path);
        Solution expected = read_solution_json(expect_in);
        std::string expected_bytes = rendered(
            [&](std::ostream& os) { write_solution_json(os, expected); });
        if (bytes != expected_bytes) {
            std::cerr << "replay does not reproduce " << expect_path << '\n';
            return kExitChecks;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"market solver with buying rights: auction clearing, "
                 "frustration metrics and multi-round crisis simulation"};
    app.require_subcommand(1);

    std::string scenario_path, solution_path, trace_path, expect_path;
    std::string out_dir = "out", format = "json";
    bool strict = false, deep_checks = false;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--out", out_dir, "output directory")
            ->capture_default_str();
        if (with_format)
            cmd->add_option("--format", format, "frustration/round table format")
                ->check(CLI::IsMember({"json", "csv"}))
                ->capture_default_str();
        cmd->add_flag("--strict", strict,
                      "fail on any guarantee-check violation, not just on "
                      "structural ones");
    };

    auto* solve_cmd = app.add_subcommand("solve", "clear one market scenario");
    solve_cmd->add_option("scenario", scenario_path, "scenario JSON file")
        ->required();
    add_common(solve_cmd);
    solve_cmd->add_flag("--deep-checks", deep_checks,
                        "full state audit after every transition (slow)");

    auto* crisis_cmd =
        app.add_subcommand("crisis", "run a multi-round crisis simulation");
    crisis_cmd->add_option("scenario", scenario_path, "scenario JSON file")
        ->required();
    add_common(crisis_cmd);

    GenConfig gen;
    int gen_buyers = 0, gen_sellers = 0;
    std::string gen_out, gen_mode = "restricted", gen_mechanism = "proportional";
    std::string gen_epsilon = "1/10";
    auto* gen_cmd = app.add_subcommand("gen", "generate a valid random scenario");
    gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("--buyers", gen_buyers, "exact buyer count (default: 2..5)");
    gen_cmd->add_option("--sellers", gen_sellers, "exact seller count (default: 1..3)");
    gen_cmd->add_option("--vmax", gen.max_volume, "max offered volume")
        ->capture_default_str();
    gen_cmd->add_option("--claim-max", gen.max_claim, "max per-buyer claim")
        ->capture_default_str();
    gen_cmd->add_option("--kind", gen.kind, "market or crisis")
        ->check(CLI::IsMember({"market", "crisis"}))
        ->capture_default_str();
    gen_cmd->add_option("--rounds", gen.rounds, "crisis rounds")->capture_default_str();
    gen_cmd->add_option("--epsilon", gen_epsilon, "price step as num/den")
        ->capture_default_str();
    gen_cmd->add_option("--mode", gen_mode, "restricted or unrestricted")
        ->check(CLI::IsMember({"restricted", "unrestricted"}))
        ->capture_default_str();
    gen_cmd->add_option("--mechanism", gen_mechanism,
                        "rights rule: proportional, cea, cel, uniform")
        ->capture_default_str();
    gen_cmd->add_flag("--budget-war", gen.budget_war,
                      "rich/poor willingness split for crisis studies");
    gen_cmd->add_option("--out", gen_out, "directory for scenario.json "
                                          "(default: stdout)");

    auto* verify_cmd =
        app.add_subcommand("verify", "re-check a stored solution against its scenario");
    verify_cmd->add_option("solution", solution_path, "solution JSON file")->required();
    verify_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    verify_cmd->add_option("--out", out_dir, "also write verification.json here");
    verify_cmd->add_flag("--strict", strict, "fail on any check violation");

    auto* replay_cmd =
        app.add_subcommand("replay", "rebuild the solution from a trace");
    replay_cmd->add_option("trace", trace_path, "trace JSONL file")->required();
    replay_cmd->add_option("--solution", expect_path,
                           "solution JSON the replay must reproduce");
    replay_cmd->add_option("--out", out_dir, "also write the rebuilt solution here");

    // verify/replay write nothing unless --out is given explicitly
    out_dir.clear();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(scenario_path, out_dir.empty() ? "out" : out_dir, format,
                             strict, deep_checks);
        if (crisis_cmd->parsed())
            return run_crisis_cmd(scenario_path, out_dir.empty() ? "out" : out_dir,
                                  format, strict);
        if (gen_cmd->parsed()) {
            if (gen_buyers) gen.min_buyers = gen.max_buyers = gen_buyers;
            if (gen_sellers) gen.min_sellers = gen.max_sellers = gen_sellers;
            auto eps = parse_rational(gen_epsilon);
            if (!eps || *eps <= 0)
                throw std::invalid_argument("epsilon must be a positive num/den");
            gen.epsilon = *eps;
            gen.mode = gen_mode == "restricted" ? Mode::restricted : Mode::unrestricted;
            auto mech = rights_mechanism_from_name(gen_mechanism);
            if (!mech) throw std::invalid_argument("unknown mechanism " + gen_mechanism);
            gen.mechanism = *mech;
            return run_gen(gen, gen_out);
        }
        if (verify_cmd->parsed())
            return run_verify(solution_path, scenario_path, out_dir, strict);
        if (replay_cmd->parsed()) return run_replay(trace_path, out_dir, expect_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "solver defect: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::runtime_error& e) {
        // file and format problems are input errors; solver guard trips are not
        std::string what = e.what();
        bool solver_bug = what.find("iteration guard") != std::string::npos;
        std::cerr << (solver_bug ? "solver defect: " : "error: ") << what << '\n';
        return solver_bug ? kExitSolver : kExitInput;
    } catch (const std::exception& e) {
        // e.g. json exceptions, which subclass std::exception directly
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
