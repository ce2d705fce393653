// capkin — analyze and simulate bounded-capacity kinetic compartmental
// networks.
//
// Subcommands:
//   analyze      minimal siphons + persistence verdict (JSON reports)
//   simulate     integrate the reduced dynamics, write a trajectory CSV
//   equilibrium  locate the equilibrium of a compatibility class
//   verify       run the full numerical verification suite
//
// Exit codes: 0 success/certified, 1 input error, 2 inconclusive/refused,
// 3 numerical failure.

#include <capkin/capkin.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string input;
    std::string out = ".";
    std::uint64_t seed = 0;
    double t_end = -1.0;  // <0: subcommand default
    int trials = -1;
    double tol_eq = 0.0;
    double abs_tol = capkin::tol::ode_abs;
    double rel_tol = capkin::tol::ode_rel;
    int max_places = capkin::tol::place_cap;
    std::string n0_text;
    double level = -1.0;
    int samples = 101;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--input", a.input, "graph description (JSON)")->required();
    cmd->add_option("--out", a.out, "output directory (created if missing)");
    cmd->add_option("--seed", a.seed, "RNG seed for randomized campaigns");
    cmd->add_option("--t-end", a.t_end, "time horizon (budget for equilibrium settling)");
    cmd->add_option("--trials", a.trials, "random trials per verification campaign");
    cmd->add_option("--tol-eq", a.tol_eq, "equilibrium residual tolerance");
    cmd->add_option("--abs-tol", a.abs_tol, "integrator absolute tolerance");
    cmd->add_option("--rel-tol", a.rel_tol, "integrator relative tolerance");
    cmd->add_option("--max-places", a.max_places, "place cap for siphon enumeration");
    cmd->add_option("--n0", a.n0_text, "initial state, comma-separated (simulate)");
    cmd->add_option("--level", a.level, "target level s = I(n) (simulate/equilibrium)");
    cmd->add_option("--samples", a.samples, "trajectory samples to record (simulate)");
}

std::vector<double> parse_n0(const std::string& text, int m) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
                ++pos;
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw capkin::InputError("--n0: cannot parse \"" + item + "\" as a number");
        }
    }
    if (static_cast<int>(v.size()) != m)
        throw capkin::InputError("--n0: expected " + std::to_string(m) + " values, got " +
                                 std::to_string(v.size()));
    return v;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw capkin::Error("cannot create output directory " + dir + ": " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int cmd_analyze(const CommonArgs& a) {
    const capkin::CompartmentalGraph g =
        capkin::CompartmentalGraph::build(capkin::io::load_graph_spec(a.input));
    const capkin::Crn crn = capkin::compartmental_crn(g);
    const capkin::PetriNet net = capkin::build_petri(crn);
    ensure_out_dir(a.out);

    const bool sc = capkin::is_strongly_connected(g);
    std::vector<std::vector<int>> siphons;
    std::string method;
    if (sc) {
        siphons = capkin::closed_form_siphons(g);
        method = "closed_form";
    } else {
        siphons = capkin::minimal_siphons(net, a.max_places);
        method = "enumeration";
    }
    capkin::io::write_text_file(join_path(a.out, "siphons.json"),
                                capkin::io::to_pretty(capkin::io::siphons_to_json(net, siphons, method)));

    const capkin::PersistenceVerdict verdict =
        sc ? capkin::check_persistence_structural(g)
           : capkin::check_persistence_theorem1(crn, a.max_places);
    capkin::io::write_text_file(join_path(a.out, "persistence.json"),
                                capkin::io::to_pretty(capkin::io::persistence_to_json(verdict, crn)));
    capkin::io::write_text_file(join_path(a.out, "crn.json"),
                                capkin::io::to_pretty(capkin::io::crn_to_json(crn)));

    std::cout << "analyze: " << siphons.size() << " minimal siphons (" << method << "), verdict "
              << capkin::verdict_name(verdict.verdict) << "\n";
    if (!verdict.note.empty())
        std::cout << "note: " << verdict.note << "\n";
    return verdict.verdict == capkin::PersistenceVerdict::Verdict::persistent_certified ? 0 : 2;
}

int cmd_simulate(const CommonArgs& a) {
    const capkin::CompartmentalGraph g =
        capkin::CompartmentalGraph::build(capkin::io::load_graph_spec(a.input));
    const capkin::ReducedSystem sys = capkin::ReducedSystem::make(g);
    const int m = sys.dim();

    std::vector<double> n0(m);
    if (!a.n0_text.empty()) {
        n0 = parse_n0(a.n0_text, m);
    } else if (a.level >= 0.0) {
        const double total = sys.total_capacity();
        if (a.level > total)
            throw capkin::InputError("--level exceeds the total capacity " + std::to_string(total));
        for (int i = 0; i < m; ++i)
            n0[i] = a.level * sys.capacities()[i] / total;
    } else {
        for (int i = 0; i < m; ++i)
            n0[i] = 0.5 * sys.capacities()[i];
    }

    const double t_end = a.t_end >= 0.0 ? a.t_end : 100.0;
    capkin::SimOptions sim;
    sim.abs_tol = a.abs_tol;
    sim.rel_tol = a.rel_tol;
    if (a.samples < 2)
        throw capkin::InputError("--samples must be at least 2");
    sim.sample_dt = t_end / (a.samples - 1);

    const capkin::Trajectory traj = capkin::simulate(sys, n0, t_end, sim);
    ensure_out_dir(a.out);
    capkin::io::write_text_file(join_path(a.out, "trajectory.csv"),
                                capkin::io::trajectory_to_csv(traj, m));

    char drift[32];
    std::snprintf(drift, sizeof drift, "%.3e", traj.max_drift);
    std::cout << "simulate: t_end=" << t_end << " accepted_steps=" << traj.accepted
              << " rejected_steps=" << traj.rejected << " conservation_drift=" << drift << "\n";
    return 0;
}

int cmd_equilibrium(const CommonArgs& a) {
    const capkin::CompartmentalGraph g =
        capkin::CompartmentalGraph::build(capkin::io::load_graph_spec(a.input));
    const capkin::ReducedSystem sys = capkin::ReducedSystem::make(g);
    const double total = sys.total_capacity();
    const double s = a.level >= 0.0 ? a.level : 0.5 * total;

    capkin::EqOptions eq;
    eq.tol_eq = a.tol_eq;
    eq.sim.abs_tol = a.abs_tol;
    eq.sim.rel_tol = a.rel_tol;
    if (a.t_end >= 0.0)
        eq.settle_budget = a.t_end;

    const capkin::EquilibriumResult r = capkin::find_equilibrium(sys, s, eq);
    ensure_out_dir(a.out);
    capkin::io::write_text_file(join_path(a.out, "equilibrium.json"),
                                capkin::io::to_pretty(capkin::io::equilibrium_to_json(r)));
    char res[32];
    std::snprintf(res, sizeof res, "%.3e", r.residual_inf);
    std::cout << "equilibrium: level=" << r.s << " residual_inf=" << res
              << " settle_time=" << r.settle_time << " newton_iterations=" << r.newton_iterations
              << "\n";
    return 0;
}

int cmd_verify(const CommonArgs& a) {
    const capkin::CompartmentalGraph g =
        capkin::CompartmentalGraph::build(capkin::io::load_graph_spec(a.input));
    if (!capkin::is_strongly_connected(g)) {
        std::cout << "verify: refused — the verified claims are stated for strongly connected "
                     "graphs and this graph is not strongly connected; run 'analyze' for the "
                     "general persistence test\n";
        return 2;
    }
    const capkin::ReducedSystem sys = capkin::ReducedSystem::make(g);

    capkin::VerifyOptions opts;
    opts.seed = a.seed;
    if (a.t_end >= 0.0)
        opts.t_end = a.t_end;
    if (a.trials >= 0) {
        opts.ordered_pairs = a.trials;
        opts.unordered_pairs = a.trials;
        opts.persistence_trials = std::max(1, a.trials / 5);
    }
    opts.eq.tol_eq = a.tol_eq;
    opts.sim.abs_tol = a.abs_tol;
    opts.sim.rel_tol = a.rel_tol;
    opts.eq.sim = opts.sim;

    const capkin::VerificationSummary sum = capkin::run_verification_suite(sys, opts);
    ensure_out_dir(a.out);
    capkin::io::write_text_file(join_path(a.out, "verification.json"),
                                capkin::io::to_pretty(capkin::io::verification_to_json(sum)));

    auto line = [](const char* name, bool pass) {
        std::cout << "  " << name << ": " << (pass ? "pass" : "FAIL") << "\n";
    };
    std::cout << "verify:\n";
    line("equilibrium uniqueness", sum.equilibrium.pass);
    line("jacobian structure", sum.jacobian.pass);
    line("monotonicity", sum.monotonicity.pass);
    line("l1 contraction", sum.contraction.pass);
    line("boundary equilibria", sum.boundary.pass);
    line("persistence evidence", sum.persistence.pass);
    std::cout << "overall: " << (sum.overall_pass ? "pass" : "FAIL") << "\n";
    return sum.overall_pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-capacity kinetic compartmental network toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* analyze = app.add_subcommand("analyze", "minimal siphons and persistence verdict");
    CLI::App* simulate = app.add_subcommand("simulate", "integrate the reduced dynamics");
    CLI::App* equilibrium = app.add_subcommand("equilibrium", "locate a class equilibrium");
    CLI::App* verify = app.add_subcommand("verify", "run the numerical verification suite");
    for (CLI::App* cmd : {analyze, simulate, equilibrium, verify})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(args);
        if (simulate->parsed())
            return cmd_simulate(args);
        if (equilibrium->parsed())
            return cmd_equilibrium(args);
        return cmd_verify(args);
    } catch (const capkin::NotStronglyConnectedError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const capkin::PlaceCapExceededError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const capkin::StateOutOfBoxError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const capkin::RateValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const capkin::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const capkin::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
