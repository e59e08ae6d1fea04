// Command-line front end: exit 0 = yes, 1 = no, 2 = error/budget.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsimple/directed.hpp"
#include "rsimple/errors.hpp"
#include "rsimple/io.hpp"
#include "rsimple/oracle.hpp"
#include "rsimple/packing.hpp"
#include "rsimple/undirected.hpp"

using nlohmann::json;
using namespace rsimple;

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ColoringChoice parse_coloring(const std::string& s) {
    if (s == "auto") return ColoringChoice::Auto;
    if (s == "exhaustive") return ColoringChoice::Exhaustive;
    if (s == "injective") return ColoringChoice::Injective;
    if (s == "random") return ColoringChoice::Randomized;
    throw ValidationError("unknown coloring kind: " + s);
}

struct CommonFlags {
    std::string input;
    long long bound = 0;
    std::string coloring = "auto";
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    int jobs = 0;
    std::uint64_t budget_states = 0;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--input", f.input, "instance file (default: stdin)");
    cmd->add_option("--bound", f.bound, "override the color/topology bound");
    cmd->add_option("--coloring", f.coloring, "auto|exhaustive|injective|random");
    cmd->add_option("--trials", f.trials, "randomized coloring trials");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--jobs", f.jobs, "worker threads (0 = all cores)");
    cmd->add_option("--budget-states", f.budget_states, "search state budget");
    cmd->add_option("--format", f.format, "output format (json)");
}

int yes_no_exit(bool yes, json out) {
    out["answer"] = yes ? "yes" : "no";
    std::cout << out.dump() << "\n";
    return yes ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers for relaxed-disjointness path and packing problems"};
    app.require_subcommand(1);

    CommonFlags sd, su, sp, oc;
    std::string pipeline = "auto";
    bool witness = false;

    auto* cmd_sd = app.add_subcommand("solve-directed", "directed r-simple k-path");
    add_common(cmd_sd, sd);

    auto* cmd_su = app.add_subcommand("solve-undirected", "undirected r-simple k-path");
    add_common(cmd_su, su);
    cmd_su->add_option("--pipeline", pipeline, "auto|general|special");

    auto* cmd_sp = app.add_subcommand("solve-packing", "p-set (r,q)-packing");
    add_common(cmd_sp, sp);

    auto* cmd_or = app.add_subcommand("oracle", "brute-force ground truth");
    add_common(cmd_or, oc);
    cmd_or->add_flag("--witness", witness, "emit a maximum walk");

    std::string gen_kind, gen_out;
    long long gen_r = 2, gen_c = 2;
    std::string gen_k;
    auto* cmd_gen = app.add_subcommand("gen", "instance generators");
    cmd_gen->add_option("kind", gen_kind, "tightness-directed|grid-pendant")->required();
    cmd_gen->add_option("--r", gen_r, "parameter r");
    cmd_gen->add_option("--c", gen_c, "grid dimension");
    cmd_gen->add_option("--k", gen_k, "override k (decimal)");
    cmd_gen->add_option("--out", gen_out, "output file (default: stdout)");

    std::string verify_input, verify_walk_path, verify_r = "1";
    auto* cmd_ver = app.add_subcommand("verify", "check a walk against an instance");
    cmd_ver->add_option("--input", verify_input, "instance file");
    cmd_ver->add_option("--walk", verify_walk_path, "walk file")->required();
    cmd_ver->add_option("--r", verify_r, "visit bound r (decimal)");

    std::string kern_out;
    auto* cmd_kern = app.add_subcommand("kernelize", "reduce a packing instance");
    add_common(cmd_kern, sp);
    cmd_kern->add_option("--out", kern_out, "kernel output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_sd->parsed()) {
            auto inst = parse_instance(read_input(sd.input));
            auto& gi = std::get<GraphInstance>(inst);
            if (!gi.k || !gi.r) throw ValidationError("instance needs k and r");
            DirectedParams params;
            if (sd.bound > 0) params.bound_override = sd.bound;
            params.coloring = parse_coloring(sd.coloring);
            params.trials = sd.trials;
            params.seed = sd.seed;
            params.jobs = sd.jobs;
            long long bound_used = 0;
            bool yes = solve_directed(gi.digraph(), *gi.k, *gi.r, params, nullptr, &bound_used);
            json out;
            out["bound_used"] = bound_used;
            return yes_no_exit(yes, out);
        }
        if (cmd_su->parsed()) {
            auto inst = parse_instance(read_input(su.input));
            auto& gi = std::get<GraphInstance>(inst);
            if (!gi.k || !gi.r) throw ValidationError("instance needs k and r");
            UndirectedParams params;
            if (su.bound > 0) params.bound_override = su.bound;
            params.coloring = parse_coloring(su.coloring);
            params.trials = su.trials;
            params.seed = su.seed;
            params.jobs = su.jobs;
            if (pipeline == "general")
                params.pipeline = UndirectedPipeline::General;
            else if (pipeline == "special")
                params.pipeline = UndirectedPipeline::Special;
            else if (pipeline != "auto")
                throw ValidationError("unknown pipeline: " + pipeline);
            long long bound_used = 0;
            bool yes = solve_undirected(gi.ugraph(), *gi.k, *gi.r, params, &bound_used);
            json out;
            out["bound_used"] = bound_used;
            return yes_no_exit(yes, out);
        }
        if (cmd_sp->parsed()) {
            auto inst = parse_instance(read_input(sp.input));
            auto& pi = std::get<PackingInstance>(inst);
            PackingBudget budget;
            if (sp.budget_states) budget.dfs_nodes = sp.budget_states;
            bool yes = solve_packing(pi, budget);
            return yes_no_exit(yes, json::object());
        }
        if (cmd_or->parsed()) {
            auto inst = parse_instance(read_input(oc.input));
            json out;
            if (std::holds_alternative<PackingInstance>(inst)) {
                auto& pi = std::get<PackingInstance>(inst);
                std::vector<std::vector<int>> sets;
                for (std::size_t i = 0; i < pi.sets.size(); ++i) {
                    auto copies = to_int64(pi.mult[i]);
                    if (!copies) throw BudgetExceeded("multiplicity too large for the oracle");
                    for (long long c = 0; c < *copies; ++c) sets.push_back(pi.sets[i]);
                }
                bool yes = brute_packing(pi.universe, sets, pi.q, pi.r);
                return yes_no_exit(yes, out);
            }
            auto& gi = std::get<GraphInstance>(inst);
            if (!gi.k || !gi.r) throw ValidationError("instance needs k and r");
            OracleBudget budget;
            if (oc.budget_states) budget.states = Nat(oc.budget_states);
            Walk w;
            Nat best;
            if (gi.directed)
                best = brute_rsimple_max(gi.digraph(), *gi.r, *gi.k, budget,
                                         witness ? &w : nullptr);
            else
                best = brute_rsimple_max(gi.ugraph(), *gi.r, *gi.k, budget,
                                         witness ? &w : nullptr);
            out["max"] = to_decimal(best);
            if (witness) out["walk"] = w.vertices;
            return yes_no_exit(best >= *gi.k, out);
        }
        if (cmd_gen->parsed()) {
            GraphInstance gi;
            if (gen_kind == "tightness-directed") {
                auto [g, k_opt] = gen_tightness_directed(static_cast<int>(gen_r));
                gi.directed = true;
                gi.n = g.n();
                gi.edges.assign(g.arcs().begin(), g.arcs().end());
                gi.r = Nat(gen_r);
                gi.k = gen_k.empty() ? k_opt : parse_nat(gen_k);
                json j = json::parse(serialize(gi));
                j["k_opt"] = to_decimal(k_opt);
                std::string text = j.dump();
                if (gen_out.empty())
                    std::cout << text << "\n";
                else
                    std::ofstream(gen_out) << text << "\n";
                return 0;
            }
            if (gen_kind == "grid-pendant") {
                UGraph g = gen_grid_pendant(static_cast<int>(gen_c), Nat(gen_r));
                gi.directed = false;
                gi.n = g.n();
                gi.edges.assign(g.edges().begin(), g.edges().end());
                gi.r = Nat(gen_r);
                if (!gen_k.empty()) gi.k = parse_nat(gen_k);
                std::string text = serialize(gi);
                if (gen_out.empty())
                    std::cout << text << "\n";
                else
                    std::ofstream(gen_out) << text << "\n";
                return 0;
            }
            throw ValidationError("unknown generator: " + gen_kind);
        }
        if (cmd_ver->parsed()) {
            auto inst = parse_instance(read_input(verify_input));
            auto& gi = std::get<GraphInstance>(inst);
            Walk w = parse_walk(read_input(verify_walk_path));
            Nat r = gi.r ? *gi.r : parse_nat(verify_r);
            WalkCheck chk = gi.directed ? verify_walk(gi.digraph(), w, r)
                                        : verify_walk(gi.ugraph(), w, r);
            json out;
            out["valid"] = chk.valid;
            out["size"] = to_decimal(chk.size);
            std::cout << out.dump() << "\n";
            return chk.valid ? 0 : 1;
        }
        if (cmd_kern->parsed()) {
            auto inst = parse_instance(read_input(sp.input));
            auto& pi = std::get<PackingInstance>(inst);
            KernelResult kr = kernelize(pi);
            std::string text = serialize(kr.kernel);
            if (!kern_out.empty()) std::ofstream(kern_out) << text << "\n";
            json out;
            out["bits"] = to_decimal(kr.bits);
            out["distinct_types"] = to_decimal(kr.distinct_types);
            if (kern_out.empty()) out["kernel"] = json::parse(text);
            std::cout << out.dump() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
