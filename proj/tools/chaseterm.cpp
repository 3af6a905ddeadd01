// Command-line front end: static analysis, chasing, monitoring and the
// combined termination check.
#include "chaseterm/export.hpp"
#include "chaseterm/syntax.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace chaseterm;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 2;
constexpr int kExitAborted = 3;
constexpr int kExitInput = 4;

struct InputError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Inputs {
    Schema schema;
    std::vector<Constraint> sigma;
    Instance instance;
};

Inputs load(const std::string& rules, const std::optional<std::string>& inst, bool as_query) {
    Inputs in;
    try {
        in.sigma = parse_constraints(read_file(rules), &in.schema).constraints;
    } catch (const ParseError& e) {
        throw InputError(rules + ": " + e.what());
    }
    if (inst) {
        try {
            in.instance = parse_instance(read_file(*inst), as_query, &in.schema);
        } catch (const ParseError& e) {
            throw InputError(*inst + ": " + e.what());
        }
    }
    return in;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

fs::path ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create directory " + dir + ": " + ec.message());
    return dir;
}

std::string label_set(std::span<const Constraint> sigma, const IdSet& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        for (const auto& c : sigma)
            if (c.id == ids[i]) out += c.label;
    }
    return out + "}";
}

std::string cycle_text(const std::vector<PositionEdge>& cycle) {
    std::string out;
    for (const auto& e : cycle) {
        if (out.empty()) out = to_string(e.from);
        out += (e.special ? " =>* " : " -> ") + to_string(e.to);
    }
    return out;
}

int exit_code(const ChaseResult& r) {
    switch (r.outcome) {
    case ChaseOutcome::Terminated: return kExitOk;
    case ChaseOutcome::Failed: return kExitFailed;
    case ChaseOutcome::Aborted: return kExitAborted;
    }
    return kExitOk;
}

void print_chase(std::ostream& os, std::span<const Constraint> sigma, const ChaseResult& r) {
    os << "outcome=" << to_string(r.outcome) << " steps=" << r.steps.size();
    if (r.abort_reason) os << " reason=" << to_string(*r.abort_reason);
    if (r.abort_reason == AbortReason::KCyclic) os << " k=" << r.k;
    os << "\n";
    if (r.failure)
        os << "failure at step " << r.failed_step << ": cannot equate constants " << to_string(r.failure->left)
           << " and " << to_string(r.failure->right) << "\n";
    if (r.cyclic_chain) {
        os << "chain:";
        for (auto i : r.cyclic_chain->edges) {
            const auto& e = r.monitor->edges()[i];
            std::string label = default_label(e.constraint_id);
            for (const auto& c : sigma)
                if (c.id == e.constraint_id) label = c.label;
            os << " " << to_string(r.monitor->nodes()[e.source].null) << " -[" << label << " "
               << to_string(e.body_positions) << "]-> " << to_string(r.monitor->nodes()[e.target].null);
        }
        os << "\n";
    }
    os << print_instance(r.instance);
}

ChasePolicy policy_of(const std::string& order, std::uint64_t seed, std::size_t max_steps) {
    ChasePolicy p = order == "rand" ? ChasePolicy::randomized(seed) : ChasePolicy::deterministic();
    if (max_steps > 0) p.max_steps = max_steps;
    return p;
}

int run_analyze(const std::string& rules, const std::vector<std::string>& checks, const std::string& dot, bool as_json) {
    const Inputs in = load(rules, std::nullopt, false);
    AnalysisRequest req = AnalysisRequest::none();
    for (const auto& c : checks) {
        if (c == "all") req = AnalysisRequest::all();
        else if (c == "wa") req.weakly_acyclic = true;
        else if (c == "safe") req.safe = true;
        else if (c == "strat") req.stratified = true;
        else if (c == "sr") req.safely_restricted = true;
        else if (c == "ir") req.inductively_restricted = true;
    }
    FiringOracle oracle;
    const AnalysisReport r = analyze(in.sigma, req, oracle);
    if (auto problem = validate_report(in.sigma, r, oracle)) throw Error("witness validation failed: " + *problem);

    if (!dot.empty()) {
        const fs::path dir = ensure_dir(dot);
        write_file(dir / "dependency.dot", to_dot(r.dependency));
        write_file(dir / "propagation.dot", to_dot(r.propagation));
        if (r.restriction) write_file(dir / "restriction.dot", to_dot(*r.restriction));
        if (r.chase) write_file(dir / "chase_graph.dot", to_dot(*r.chase));
    }
    if (as_json) {
        std::cout << to_json(in.sigma, r).dump(2) << "\n";
        return kExitOk;
    }
    auto line = [](const char* name, const std::optional<bool>& v) {
        if (v) std::cout << name << "=" << (*v ? "true" : "false") << "\n";
    };
    line("WA", r.weakly_acyclic);
    line("safe", r.safe);
    line("strat", r.stratified);
    line("SR", r.safely_restricted);
    line("IR", r.inductively_restricted);
    std::cout << "affected=" << to_string(r.affected) << "\n";
    if (r.restriction) {
        std::cout << "restriction edges:";
        for (const auto& [a, b] : r.restriction->graph.edges)
            std::cout << " (" << r.restriction->graph.labels.at(a) << "," << r.restriction->graph.labels.at(b) << ")";
        std::cout << "\n";
        for (const auto& [id, ps] : r.restriction->f)
            std::cout << "f(" << r.restriction->graph.labels.at(id) << ")=" << to_string(ps) << "\n";
    }
    if (r.part) {
        std::cout << "part={";
        for (std::size_t i = 0; i < r.part->size(); ++i) std::cout << (i ? "," : "") << label_set(in.sigma, (*r.part)[i]);
        std::cout << "}\n";
    }
    if (r.weakly_acyclic == false) std::cout << "WA witness: " << cycle_text(r.weak_acyclicity_cycle) << "\n";
    if (r.safe == false) std::cout << "safe witness: " << cycle_text(r.safety_cycle) << "\n";
    auto component = [&](const char* name, const std::optional<ComponentWitness>& w) {
        if (w)
            std::cout << name << " witness: " << label_set(in.sigma, w->component) << " " << cycle_text(w->cycle) << "\n";
    };
    component("strat", r.stratification_witness);
    component("SR", r.safe_restriction_witness);
    component("IR", r.inductive_restriction_witness);
    return kExitOk;
}

int run_chase(const std::string& rules, const std::string& inst, bool as_query, std::size_t max_steps,
              const std::string& order, std::uint64_t seed, bool as_json) {
    const Inputs in = load(rules, inst, as_query);
    const ChaseResult r = chase(in.instance, in.sigma, policy_of(order, seed, max_steps));
    if (as_json)
        std::cout << to_json(in.sigma, r).dump(2) << "\n";
    else
        print_chase(std::cout, in.sigma, r);
    return exit_code(r);
}

int run_monitor(const std::string& rules, const std::string& inst, bool as_query, std::size_t k, std::size_t max_steps,
                const std::string& dot, bool as_json) {
    const Inputs in = load(rules, inst, as_query);
    const ChaseResult r = monitored_chase(in.instance, in.sigma, k, policy_of("det", 0, max_steps));
    if (!dot.empty()) write_file(ensure_dir(dot) / "monitor.dot", to_dot(*r.monitor));
    if (as_json)
        std::cout << to_json(in.sigma, r).dump(2) << "\n";
    else
        print_chase(std::cout, in.sigma, r);
    return exit_code(r);
}

int run_irrelevant(const std::string& rules, const std::string& inst, bool as_query, bool as_json) {
    const Inputs in = load(rules, inst, as_query);
    if (in.instance.empty()) throw InputError("cannot build alpha_I from empty instance");
    const Irrelevance irr = irrelevant_constraints(in.instance, in.sigma);
    if (as_json) {
        std::cout << to_json(in.sigma, irr).dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "irrelevant=" << label_set(in.sigma, irr.irrelevant) << "\n";
    std::cout << "relevant=" << label_set(in.sigma, irr.relevant) << "\n";
    std::cout << "alpha_I: " << to_string(irr.instance_constraint) << "\n";
    return kExitOk;
}

int run_termcheck(const std::string& rules, const std::string& inst, bool as_query, std::size_t k,
                  std::size_t max_steps, bool as_json) {
    const Inputs in = load(rules, inst, as_query);
    const TerminationGuarantee g = data_dependent_guarantee(in.instance, in.sigma);
    std::optional<ChaseResult> run;
    if (g.level == GuaranteeLevel::None) run = monitored_chase(in.instance, in.sigma, k, policy_of("det", 0, max_steps));

    if (as_json) {
        nlohmann::json out = {{"guarantee", to_json(in.sigma, g)}};
        out["monitored_chase"] = run ? to_json(in.sigma, *run) : nlohmann::json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "guarantee=" << to_string(g.level) << "\n";
        std::cout << "relevant=" << label_set(in.sigma, g.relevant) << "\n";
        if (g.irrelevance) std::cout << "irrelevant=" << label_set(in.sigma, g.irrelevance->irrelevant) << "\n";
        if (run) {
            std::cout << "monitored chase (k=" << k << "): ";
            print_chase(std::cout, in.sigma, *run);
        }
    }
    return run ? exit_code(*run) : kExitOk;
}

int run_fixture(const std::string& family, std::size_t k, const std::string& out) {
    if (family != "appendix-g") throw InputError("unknown fixture family " + family);
    Fixture f;
    try {
        f = appendix_g(k);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    const fs::path dir = ensure_dir(out);
    const std::string stem = "appendix_g_k" + std::to_string(k);
    write_file(dir / (stem + ".rules"), print_constraints(f.constraints));
    write_file(dir / (stem + ".inst"), print_instance(f.instance));
    std::cout << (dir / (stem + ".rules")).string() << "\n" << (dir / (stem + ".inst")).string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chase engine and chase-termination analyzer"};
    app.require_subcommand(1);

    std::string rules, inst, dot, order = "det", family;
    std::vector<std::string> checks{"all"};
    bool as_json = false, as_query = false;
    std::size_t max_steps = kDefaultMaxSteps, k = 5;
    std::uint64_t seed = 0;

    auto* analyze_cmd = app.add_subcommand("analyze", "Run the termination condition ladder on a constraint file");
    analyze_cmd->add_option("constraints", rules, "Constraint file")->required();
    analyze_cmd->add_option("--check", checks, "Conditions to check")
        ->check(CLI::IsMember({"wa", "safe", "strat", "sr", "ir", "all"}));
    analyze_cmd->add_option("--dot", dot, "Directory for DOT exports");
    analyze_cmd->add_flag("--json", as_json, "Emit a JSON report");

    auto* chase_cmd = app.add_subcommand("chase", "Chase an instance");
    chase_cmd->add_option("constraints", rules, "Constraint file")->required();
    chase_cmd->add_option("instance", inst, "Instance file")->required();
    chase_cmd->add_flag("--as-query", as_query, "Read uppercase identifiers as labeled nulls");
    chase_cmd->add_option("--max-steps", max_steps, "Step limit (0 = unlimited)")->capture_default_str();
    chase_cmd->add_option("--order", order, "Violation order")->check(CLI::IsMember({"det", "rand"}));
    chase_cmd->add_option("--seed", seed, "Seed for --order rand");
    chase_cmd->add_flag("--json", as_json, "Emit a JSON report");

    auto* monitor_cmd = app.add_subcommand("monitor", "Chase under a k-cyclicity monitor");
    monitor_cmd->add_option("constraints", rules, "Constraint file")->required();
    monitor_cmd->add_option("instance", inst, "Instance file")->required();
    monitor_cmd->add_flag("--as-query", as_query, "Read uppercase identifiers as labeled nulls");
    monitor_cmd->add_option("-k", k, "Cycle depth")->required()->check(CLI::PositiveNumber);
    monitor_cmd->add_option("--max-steps", max_steps, "Step limit (0 = unlimited)")->capture_default_str();
    monitor_cmd->add_option("--dot", dot, "Directory for the monitor graph DOT export");
    monitor_cmd->add_flag("--json", as_json, "Emit a JSON report");

    auto* irrelevant_cmd = app.add_subcommand("irrelevant", "Constraints that cannot fire on an instance");
    irrelevant_cmd->add_option("constraints", rules, "Constraint file")->required();
    irrelevant_cmd->add_option("instance", inst, "Instance file")->required();
    irrelevant_cmd->add_flag("--as-query", as_query, "Read uppercase identifiers as labeled nulls");
    irrelevant_cmd->add_flag("--json", as_json, "Emit a JSON report");

    auto* termcheck_cmd = app.add_subcommand("termcheck", "Static guarantee, then a monitored chase if needed");
    termcheck_cmd->add_option("constraints", rules, "Constraint file")->required();
    termcheck_cmd->add_option("instance", inst, "Instance file")->required();
    termcheck_cmd->add_flag("--as-query", as_query, "Read uppercase identifiers as labeled nulls");
    termcheck_cmd->add_option("-k", k, "Cycle depth for the monitored chase")->capture_default_str()->check(CLI::PositiveNumber);
    termcheck_cmd->add_option("--max-steps", max_steps, "Step limit (0 = unlimited)")->capture_default_str();
    termcheck_cmd->add_flag("--json", as_json, "Emit a JSON report");

    auto* fixture_cmd = app.add_subcommand("fixture", "Write a built-in fixture family");
    fixture_cmd->add_option("family", family, "Fixture family")->required()->check(CLI::IsMember({"appendix-g"}));
    fixture_cmd->add_option("-k", k, "Family parameter")->required();
    fixture_cmd->add_option("--out", dot, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*analyze_cmd) return run_analyze(rules, checks, dot, as_json);
        if (*chase_cmd) return run_chase(rules, inst, as_query, max_steps, order, seed, as_json);
        if (*monitor_cmd) return run_monitor(rules, inst, as_query, k, max_steps, dot, as_json);
        if (*irrelevant_cmd) return run_irrelevant(rules, inst, as_query, as_json);
        if (*termcheck_cmd) return run_termcheck(rules, inst, as_query, k, max_steps, as_json);
        if (*fixture_cmd) return run_fixture(family, k, dot);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
