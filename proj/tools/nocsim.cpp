// nocsim: simulate, estimate and verify the mesh NoC model.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "noc/config.hpp"
#include "noc/properties.hpp"
#include "noc/smc.hpp"
#include "noc/trace_io.hpp"

namespace {

enum ExitCode : int { kOk = 0, kPropertyFailed = 1, kConfigError = 2, kEngineFault = 3, kInconclusive = 4 };

struct CommonOptions {
    std::string config;
    std::optional<int> n;
    std::optional<int> buffer_size;
    std::optional<int> activity_thresh;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("-c,--config", o.config,
                    fmt::format("JSON config file (default: ${}, else built-in defaults)", noc::kConfigEnvVar));
    cmd->add_option("--n", o.n, "Mesh side length");
    cmd->add_option("--buffer-size", o.buffer_size, "Input buffer capacity");
    cmd->add_option("--activity-thresh", o.activity_thresh, "Activity threshold T");
}

noc::RunConfig resolve_config(const CommonOptions& o) {
    nlohmann::json doc = nlohmann::json::object();
    std::string path = o.config;
    if (path.empty()) {
        if (const char* env = std::getenv(noc::kConfigEnvVar); env != nullptr && *env != '\0') path = env;
    }
    if (!path.empty()) doc = noc::load_config(path).canonical;
    if (o.n) doc["n"] = *o.n;
    if (o.buffer_size) doc["buffer_size"] = *o.buffer_size;
    if (o.activity_thresh) doc["activity_thresh"] = *o.activity_thresh;
    return noc::parse_config(doc);
}

/// Parses "a", "a:b" (inclusive range) or "a:b:step" items.
std::vector<std::uint64_t> expand_grid(const std::vector<std::string>& items) {
    std::vector<std::uint64_t> out;
    for (const auto& item : items) {
        std::vector<std::uint64_t> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = item.find(':', start);
            const std::string piece = item.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
            try {
                std::size_t used = 0;
                if (piece.empty() || piece[0] == '-') throw std::invalid_argument(piece);
                parts.push_back(std::stoull(piece, &used));
                if (used != piece.size()) throw std::invalid_argument(piece);
            } catch (const std::exception&) {
                throw noc::ConfigError(fmt::format("bad grid item '{}'", item));
            }
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        if (parts.size() == 1) {
            out.push_back(parts[0]);
        } else if (parts.size() == 2 || parts.size() == 3) {
            const std::uint64_t step = parts.size() == 3 ? parts[2] : 1;
            if (step == 0 || parts[1] < parts[0]) throw noc::ConfigError(fmt::format("bad grid range '{}'", item));
            for (std::uint64_t v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
        } else {
            throw noc::ConfigError(fmt::format("bad grid item '{}'", item));
        }
    }
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw noc::ConfigError(fmt::format("cannot write '{}'", path));
    return file;
}

int run_simulate(const CommonOptions& common, std::uint64_t cycles, std::optional<std::uint64_t> seed_opt,
                 const std::string& trace_out) {
    const noc::RunConfig rc = resolve_config(common);
    const std::uint64_t seed = seed_opt.value_or(rc.smc.seed);
    std::ofstream file;
    std::ostream* trace = trace_out.empty() ? nullptr : &open_output(trace_out, file);

    noc::NocState state = noc::make_initial_state(rc.engine);
    noc::RngDraws draws(seed);
    noc::CycleEvents events;
    if (trace) noc::write_record(*trace, noc::header_record(rc, "simulate", seed));
    for (std::uint64_t c = 0; c < cycles; ++c) {
        noc::step_cycle(state, rc.engine, draws, events);
        if (trace) noc::write_record(*trace, noc::cycle_record(events, state));
    }
    const auto summary = noc::summary_record(state, cycles);
    if (trace) noc::write_record(*trace, summary);
    noc::write_record(std::cout, summary);
    return kOk;
}

struct SmcArgs {
    std::vector<std::string> kinds{"resistive"};
    std::vector<std::string> thresholds;
    std::vector<std::string> horizons;
    std::optional<std::uint64_t> runs;
    std::optional<double> confidence;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scope;
    std::string out;
    unsigned jobs = 1;
};

int run_smc(const CommonOptions& common, const SmcArgs& a) {
    const noc::RunConfig rc = resolve_config(common);
    noc::PsnQuery q;
    q.kinds.clear();
    for (const auto& k : a.kinds) q.kinds.push_back(noc::parse_noise_kind(k));
    q.thresholds = expand_grid(a.thresholds);
    q.horizons = expand_grid(a.horizons);
    q.scope = a.scope ? noc::parse_scope(*a.scope) : rc.scope;
    q.validate(rc.engine.topology());
    const auto table = noc::estimate_cdf(rc.engine, q, a.runs.value_or(rc.smc.runs),
                                         a.confidence.value_or(rc.smc.confidence), a.seed.value_or(rc.smc.seed),
                                         a.jobs, rc.digest);
    std::ofstream file;
    noc::write_csv(open_output(a.out, file), table);
    return kOk;
}

int run_check(const CommonOptions& common, const std::vector<std::string>& families, std::size_t max_states,
              const std::string& out_path) {
    const noc::RunConfig rc = resolve_config(common);
    const auto properties = noc::properties_for(rc.engine, families);
    std::ofstream file;
    std::ostream& out = open_output(out_path, file);
    noc::write_record(out, noc::header_record(rc, "check", 0));

    const noc::StateGraph graph = noc::explore(rc.engine, noc::ExploreOptions{max_states});
    const auto results = noc::check_properties(graph, properties);
    bool failed = false;
    bool inconclusive = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const bool ok = noc::passed(properties[i], r.verdict);
        noc::write_record(out, noc::verdict_record(r, ok, graph.size(), graph.exhausted));
        if (r.verdict == noc::Verdict::Inconclusive) {
            inconclusive = true;
        } else if (!ok) {
            failed = true;
        }
        if (r.verdict == noc::Verdict::Violated) {
            for (std::size_t s = 0; s < r.states.size(); ++s) noc::write_record(out, noc::state_record(r.states[s], s));
        }
    }
    if (failed) return kPropertyFailed;
    if (inconclusive) return kInconclusive;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle-accurate mesh NoC simulator with noise estimation and state-space checking"};
    app.require_subcommand(1);

    CommonOptions common;

    auto* sim = app.add_subcommand("simulate", "Run one seeded simulation and write an NDJSON trace");
    add_common(sim, common);
    std::uint64_t cycles = 100;
    std::optional<std::uint64_t> sim_seed;
    std::string trace_out;
    sim->add_option("--cycles", cycles, "Cycles to simulate")->capture_default_str();
    sim->add_option("--seed", sim_seed, "RNG seed (default: config smc.seed)");
    sim->add_option("--trace-out", trace_out, "Trace file ('-' for stdout)");

    auto* smc = app.add_subcommand("smc", "Estimate P(counter reaches K within N cycles) and write CSV");
    add_common(smc, common);
    SmcArgs smc_args;
    smc->add_option("--kind", smc_args.kinds, "resistive and/or inductive")->delimiter(',')->capture_default_str();
    smc->add_option("--K", smc_args.thresholds, "Thresholds, e.g. 1,2,5 or 1:10")->delimiter(',')->required();
    smc->add_option("--N-grid", smc_args.horizons, "Horizons, e.g. 0:100 or 10,20,50")->delimiter(',')->required();
    smc->add_option("--runs", smc_args.runs, "Simulation runs (default: config smc.runs)");
    smc->add_option("--confidence", smc_args.confidence, "Interval confidence (default: config)");
    smc->add_option("--seed", smc_args.seed, "Base seed (default: config smc.seed)");
    smc->add_option("--scope", smc_args.scope, "global, router:<id> or class:<corner|h_edge|v_edge|central>");
    smc->add_option("--out", smc_args.out, "CSV file (default stdout)");
    smc->add_option("--jobs", smc_args.jobs, "Worker threads")->capture_default_str();

    auto* check = app.add_subcommand("check", "Explore all reachable states and check properties");
    add_common(check, common);
    std::vector<std::string> families = noc::property_family_names();
    std::size_t max_states = noc::ExploreOptions{}.max_states;
    std::string check_out;
    check->add_option("--properties", families, "Property families")->delimiter(',')->capture_default_str();
    check->add_option("--max-states", max_states, "State budget")->capture_default_str();
    check->add_option("--out", check_out, "Report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*sim) return run_simulate(common, cycles, sim_seed, trace_out);
        if (*smc) return run_smc(common, smc_args);
        if (*check) return run_check(common, families, max_states, check_out);
    } catch (const noc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const noc::StateBudgetExceeded& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return kInconclusive;
    } catch (const noc::EngineFault& e) {
        std::cerr << "engine fault: " << e.what() << '\n';
        return kEngineFault;
    } catch (const noc::ContractViolation& e) {
        std::cerr << "engine fault: " << e.what() << '\n';
        return kEngineFault;
    }
    return kOk;
}
