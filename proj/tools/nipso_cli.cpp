// Command-line front end: single-point stability checks, region scans,
// the order-2 sufficiency sweep, recurrence Monte Carlo, and the full-swarm
// runner. Verdicts (stable/unstable/diverged) exit 0; only malformed input
// or I/O failure is nonzero.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nipso/config.hpp"
#include "nipso/fixed_points.hpp"
#include "nipso/parallel.hpp"
#include "nipso/simulation.hpp"
#include "nipso/stability.hpp"
#include "nipso/variants.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::uint64_t env_seed() {
    const char* env = std::getenv("NIPSO_SEED");
    if (!env) return 0;
    try {
        if (env[0] == '-') throw std::invalid_argument(env);
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("NIPSO_SEED is not an unsigned integer");
    }
}

// ---------------------------------------------------------------------------
// shared variant flags

struct VariantFlags {
    std::string variant = "cpso";
    double w = 0.7;
    double c1 = 1.4;
    double c2 = 1.4;
    double chat = 3.0;
    int nsize = 2;
    double u = 0.5;
    double y = 0.0;
    double g = 0.0;
    double yhat = 0.0;
    std::vector<double> means;  // fips informer means
    std::string spec_file;      // custom
};

void add_variant_flags(CLI::App* cmd, VariantFlags& f) {
    cmd->add_option("--variant", f.variant, "cpso | fips | upso | custom")
        ->check(CLI::IsMember({"cpso", "fips", "upso", "custom"}));
    cmd->add_option("--w", f.w, "inertia weight");
    cmd->add_option("--c1", f.c1, "cognitive coefficient (cpso/upso)");
    cmd->add_option("--c2", f.c2, "social coefficient (cpso/upso)");
    cmd->add_option("--chat", f.chat, "total attraction c1+c2 (fips)");
    cmd->add_option("--nsize", f.nsize, "neighbourhood size (fips)");
    cmd->add_option("--u", f.u, "unification factor (upso)");
    cmd->add_option("--y", f.y, "personal-best informer mean");
    cmd->add_option("--g", f.g, "local-best informer mean (upso)");
    cmd->add_option("--yhat", f.yhat, "global-best informer mean");
    cmd->add_option("--means", f.means, "fips informer means, comma separated")->delimiter(',');
    cmd->add_option("--spec", f.spec_file, "model config file (custom)");
}

// Build the model; means_supplied reports whether informer means came from
// the user (fixed points are only meaningful then).
nipso::NipsoSpec build_spec(const CLI::App* cmd, const VariantFlags& f, bool* means_supplied) {
    const bool have_means = cmd->count("--y") || cmd->count("--g") || cmd->count("--yhat") ||
                            cmd->count("--means");
    if (f.variant == "cpso") {
        if (means_supplied) *means_supplied = have_means;
        return nipso::cpso_spec({f.w, f.c1, f.c2}, f.y, f.yhat);
    }
    if (f.variant == "fips") {
        if (means_supplied) *means_supplied = have_means;
        std::vector<double> means = f.means;
        if (means.empty()) means.assign(static_cast<std::size_t>(std::max(f.nsize, 1)), 0.0);
        return nipso::fips_spec({f.w, f.chat, f.nsize}, means);
    }
    if (f.variant == "upso") {
        if (means_supplied) *means_supplied = have_means;
        return nipso::upso_spec({f.w, f.c1, f.c2, f.u}, f.y, f.g, f.yhat);
    }
    // custom: informer limits live in the spec file
    if (f.spec_file.empty()) throw std::invalid_argument("--variant custom requires --spec FILE");
    if (means_supplied) *means_supplied = true;
    return nipso::spec_from_config(nipso::load_key_values(f.spec_file));
}

std::string variant_config_line(const CLI::App* cmd, const VariantFlags& f) {
    std::ostringstream os;
    os << "variant=" << f.variant;
    if (f.variant == "cpso")
        os << " w=" << fmt12(f.w) << " c1=" << fmt12(f.c1) << " c2=" << fmt12(f.c2);
    else if (f.variant == "fips")
        os << " w=" << fmt12(f.w) << " chat=" << fmt12(f.chat) << " nsize=" << f.nsize;
    else if (f.variant == "upso")
        os << " w=" << fmt12(f.w) << " c1=" << fmt12(f.c1) << " c2=" << fmt12(f.c2)
           << " u=" << fmt12(f.u);
    else
        os << " spec=" << f.spec_file;
    if (cmd->count("--y")) os << " y=" << fmt12(f.y);
    if (cmd->count("--g")) os << " g=" << fmt12(f.g);
    if (cmd->count("--yhat")) os << " yhat=" << fmt12(f.yhat);
    if (cmd->count("--means")) {
        os << " means=";
        for (std::size_t i = 0; i < f.means.size(); ++i)
            os << (i ? "," : "") << fmt12(f.means[i]);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// check

int cmd_check(const CLI::App* cmd, const VariantFlags& flags, bool as_json) {
    bool means_supplied = false;
    const nipso::NipsoSpec spec = build_spec(cmd, flags, &means_supplied);
    const nipso::StabilityReport rep = nipso::full_report(spec);

    bool have_fp = false;
    nipso::FixedPoint fp;
    if (means_supplied && rep.order1 && rep.order2) {
        try {
            fp = nipso::fixed_point(spec);
            have_fp = true;
        } catch (const std::domain_error&) {
            have_fp = false;  // boundary denominator; report without fixed point
        }
    }

    const std::string config = variant_config_line(cmd, flags);
    if (as_json) {
        nlohmann::json doc;
        doc["version"] = kVersion;
        doc["config"] = config;
        doc["report"] = nlohmann::json::parse(rep.to_json());
        if (have_fp)
            doc["fixed_point"] = {{"mean", fp.mean},
                                  {"variance", fp.variance},
                                  {"kappa1", fp.kappa1},
                                  {"kappa2", fp.kappa2},
                                  {"kappa3", fp.kappa3},
                                  {"denominator", fp.denominator}};
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    std::cout << "nipso " << kVersion << "\n"
              << "config: " << config << "\n"
              << "order1: " << (rep.order1 ? "stable" : "unstable") << " (margin "
              << fmt12(rep.order1_margin) << ")\n"
              << "order2: " << (rep.order2 ? "stable" : "unstable") << " (margin "
              << fmt12(rep.order2_margin) << ")\n"
              << "necessary: " << (rep.necessary_ok ? "satisfied" : "violated") << "\n"
              << "marginal: " << (rep.marginal ? "yes" : "no") << "\n"
              << "psi: " << fmt12(rep.psi) << "\n"
              << "phi: " << fmt12(rep.phi) << "\n"
              << "rho_a: " << fmt12(rep.rho_a) << "\n"
              << "rho_b: " << fmt12(rep.rho_b) << "\n";
    if (have_fp)
        std::cout << "fixed_point_mean: " << fmt12(fp.mean) << "\n"
                  << "fixed_point_variance: " << fmt12(fp.variance) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// region

struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int res = 0;
};

Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto colon = text.find(':', pos);
        if (colon == std::string::npos) colon = text.size();
        parts.push_back(text.substr(pos, colon - pos));
        pos = colon + 1;
    }
    if (parts.size() != 4) throw std::invalid_argument("axis must be name:lo:hi:res, got '" + text + "'");
    Axis a;
    a.name = parts[0];
    try {
        a.lo = std::stod(parts[1]);
        a.hi = std::stod(parts[2]);
        a.res = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw std::invalid_argument("axis must be name:lo:hi:res, got '" + text + "'");
    }
    if (a.res < 2) throw std::invalid_argument("axis resolution must be >= 2");
    if (!(a.lo < a.hi)) throw std::invalid_argument("axis needs lo < hi");
    return a;
}

int cmd_region(const CLI::App* cmd, const VariantFlags& flags, const std::string& axis1_text,
               const std::string& axis2_text, const std::string& out_path) {
    const Axis ax1 = parse_axis(axis1_text);
    const Axis ax2 = parse_axis(axis2_text);
    if (ax1.name == ax2.name) throw std::invalid_argument("region: axes must differ");

    const std::vector<std::string> allowed = [&]() -> std::vector<std::string> {
        if (flags.variant == "cpso") return {"w", "c1", "c2"};
        if (flags.variant == "fips") return {"w", "chat"};
        if (flags.variant == "upso") return {"w", "c1", "c2", "u"};
        throw std::invalid_argument("region: variant must be cpso, fips, or upso");
    }();
    for (const Axis* ax : {&ax1, &ax2})
        if (std::find(allowed.begin(), allowed.end(), ax->name) == allowed.end())
            throw std::invalid_argument("region: axis '" + ax->name + "' not valid for variant " +
                                        flags.variant);

    auto value_at = [](const Axis& ax, int i) {
        return ax.lo + (ax.hi - ax.lo) * static_cast<double>(i) / static_cast<double>(ax.res - 1);
    };
    auto report_at = [&](double v1, double v2) {
        VariantFlags f = flags;
        auto assign = [&](const std::string& name, double v) {
            if (name == "w") f.w = v;
            else if (name == "c1") f.c1 = v;
            else if (name == "c2") f.c2 = v;
            else if (name == "chat") f.chat = v;
            else if (name == "u") f.u = v;
        };
        assign(ax1.name, v1);
        assign(ax2.name, v2);
        return nipso::full_report(build_spec(cmd, f, nullptr));
    };

    // Rows are a pure function of their grid point, so any evaluation order
    // produces the same file; blocks here only buy parallelism.
    std::vector<std::string> rows(static_cast<std::size_t>(ax2.res));
    nipso::parallel_blocks(static_cast<std::size_t>(ax2.res), [&](std::size_t i2) {
        const double v2 = value_at(ax2, static_cast<int>(i2));
        std::string& row = rows[i2];
        for (int i1 = 0; i1 < ax1.res; ++i1) {
            const double v1 = value_at(ax1, i1);
            const nipso::StabilityReport rep = report_at(v1, v2);
            row += fmt12(v1);
            row += ',';
            row += fmt12(v2);
            row += ',';
            row += rep.order1 ? '1' : '0';
            row += ',';
            row += rep.order2 ? '1' : '0';
            row += ',';
            row += fmt12(rep.rho_a);
            row += ',';
            row += fmt12(rep.rho_b);
            row += '\n';
        }
    });

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << "# nipso " << kVersion << "\n"
        << "# config: " << variant_config_line(cmd, flags) << " axis1=" << axis1_text
        << " axis2=" << axis2_text << "\n"
        << ax1.name << ',' << ax2.name << ",order1,order2,rho_a,rho_b\n";
    for (const auto& row : rows) out << row;
    if (!out) throw std::runtime_error("write failed: " + out_path);
    std::cout << "wrote " << out_path << " (" << ax1.res << "x" << ax2.res << " cells)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(int max_informers, std::int64_t samples, std::uint64_t seed,
               const std::string& json_path) {
    if (max_informers < 1) throw std::invalid_argument("verify: --max-informers must be >= 1");
    if (samples < 0) throw std::invalid_argument("verify: --samples must be >= 0");

    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["seed"] = seed;
    doc["config"] = "max_informers=" + std::to_string(max_informers) +
                    " samples=" + std::to_string(samples);
    doc["results"] = nlohmann::json::array();

    std::cout << "nipso " << kVersion << " sufficiency sweep (seed " << seed << ")\n";
    bool all_pass = true;
    for (int i = 1; i <= max_informers; ++i) {
        nipso::SweepResult res;
        res.informer_count = static_cast<std::size_t>(i);
        if (samples > 0)
            res = nipso::sufficiency_sweep(static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(samples), seed);
        const double rate = res.samples == 0
                                ? 100.0
                                : 100.0 * static_cast<double>(res.rho_b_below_one) /
                                      static_cast<double>(res.samples);
        char line[128];
        std::snprintf(line, sizeof line, "I=%d: %zu/%zu rho(B)<1 (%.12g%%)", i,
                      res.rho_b_below_one, res.samples, rate);
        std::cout << line << "\n";
        for (const auto& bad : res.counterexamples) {
            all_pass = false;
            std::cout << "  counterexample: e_theta0=" << fmt12(bad.e_theta0)
                      << " v_theta0=" << fmt12(bad.v_theta0) << " means=";
            for (std::size_t k = 0; k < bad.informer_means.size(); ++k)
                std::cout << (k ? "," : "") << fmt12(bad.informer_means[k]);
            std::cout << " vars=";
            for (std::size_t k = 0; k < bad.informer_variances.size(); ++k)
                std::cout << (k ? "," : "") << fmt12(bad.informer_variances[k]);
            std::cout << "\n";
        }
        nlohmann::json entry;
        entry["informers"] = i;
        entry["samples"] = res.samples;
        entry["rho_b_below_one"] = res.rho_b_below_one;
        entry["counterexamples"] = nlohmann::json::array();
        for (const auto& bad : res.counterexamples)
            entry["counterexamples"].push_back({{"e_theta0", bad.e_theta0},
                                                {"v_theta0", bad.v_theta0},
                                                {"means", bad.informer_means},
                                                {"vars", bad.informer_variances}});
        doc["results"].push_back(entry);
    }
    std::cout << (all_pass ? "all sampled configs satisfy rho(B)<1\n"
                           : "counterexamples found (see above)\n");
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open output file: " + json_path);
        out << doc.dump(2) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

std::string resolved_run_config(const nipso::RecurrenceRun& run) {
    std::ostringstream os;
    os << "theta0=" << run.spec.theta0.to_string();
    for (std::size_t i = 0; i < run.spec.informers.size(); ++i) {
        os << " informer" << (i + 1) << ".coeff=" << run.spec.informers[i].coeff.to_string()
           << " informer" << (i + 1) << ".process=" << run.spec.informers[i].process.to_string();
    }
    os << " steps=" << run.steps << " runs=" << run.runs << " seed=" << run.seed
       << " init_position=unif(" << fmt12(run.initial_position.lo) << ","
       << fmt12(run.initial_position.hi) << ")"
       << " init_velocity=unif(" << fmt12(run.initial_velocity.lo) << ","
       << fmt12(run.initial_velocity.hi) << ")"
       << " form="
       << (run.form == nipso::RecurrenceRun::Form::Velocity ? "velocity" : "second-order");
    return os.str();
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool seed_given,
                 std::uint64_t seed, bool mean_tol_given, double mean_tol, double var_tol) {
    const auto kv = nipso::load_key_values(config_path);
    nipso::RecurrenceRun run = nipso::run_from_config(kv);
    if (kv.find("seed") == kv.end()) run.seed = env_seed();
    if (seed_given) run.seed = seed;

    namespace fs = std::filesystem;
    if (!fs::is_directory(out_dir))
        throw std::runtime_error("output directory does not exist: " + out_dir);

    const nipso::MomentTrajectory traj = nipso::simulate_recurrence(run);

    bool have_fp = false;
    nipso::FixedPoint fp;
    try {
        fp = nipso::fixed_point(run.spec);
        have_fp = true;
    } catch (const std::domain_error&) {
        have_fp = false;  // unstable or boundary: no predicted limits
    }

    nipso::Tolerances tol;
    tol.var_rel = var_tol;
    tol.mean_abs = mean_tol_given
                       ? mean_tol
                       : 3.0 * std::sqrt(std::max(traj.tail_var, 0.0) /
                                         static_cast<double>(run.runs));
    nipso::ConvergenceVerdict verdict{false, false};
    if (have_fp) verdict = nipso::convergence_verdict(traj, fp, tol);

    const std::string config = resolved_run_config(run);
    const fs::path csv_path = fs::path(out_dir) / "trajectory.csv";
    {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open output file: " + csv_path.string());
        csv << "# nipso " << kVersion << "\n"
            << "# seed=" << run.seed << "\n"
            << "# config: " << config << "\n";
        nipso::write_trajectory_csv(csv, traj);
        if (!csv) throw std::runtime_error("write failed: " + csv_path.string());
    }

    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["seed"] = run.seed;
    doc["config"] = config;
    doc["diverged"] = traj.diverged;
    doc["diverged_runs"] = traj.diverged_runs;
    doc["recorded_steps"] = traj.mean_series.size();
    doc["tail_mean"] = traj.tail_mean;
    doc["tail_var"] = traj.tail_var;
    doc["tolerances"] = {{"mean_abs", tol.mean_abs}, {"var_rel", tol.var_rel}};
    if (have_fp) {
        doc["predicted"] = {{"mean", fp.mean}, {"variance", fp.variance}};
        doc["verdict"] = {{"mean_ok", verdict.mean_ok},
                          {"var_ok", verdict.var_ok},
                          {"pass", verdict.mean_ok && verdict.var_ok}};
    } else {
        doc["predicted"] = nullptr;
        doc["verdict"] = {{"mean_ok", false}, {"var_ok", false}, {"pass", false}};
    }
    const fs::path json_path = fs::path(out_dir) / "summary.json";
    {
        std::ofstream js(json_path);
        if (!js) throw std::runtime_error("cannot open output file: " + json_path.string());
        js << doc.dump(2) << "\n";
        if (!js) throw std::runtime_error("write failed: " + json_path.string());
    }

    std::cout << "nipso " << kVersion << "\n"
              << "config: " << config << "\n"
              << "diverged: " << (traj.diverged ? "yes" : "no") << " (" << traj.diverged_runs
              << " of " << run.runs << " runs)\n"
              << "tail_mean: " << fmt12(traj.tail_mean) << "\n"
              << "tail_var: " << fmt12(traj.tail_var) << "\n";
    if (have_fp)
        std::cout << "predicted_mean: " << fmt12(fp.mean) << "\n"
                  << "predicted_variance: " << fmt12(fp.variance) << "\n"
                  << "verdict: " << (verdict.mean_ok && verdict.var_ok ? "pass" : "fail")
                  << " (mean " << (verdict.mean_ok ? "ok" : "off") << ", variance "
                  << (verdict.var_ok ? "ok" : "off") << ")\n";
    else
        std::cout << "predicted: none (spec not order-2 stable)\nverdict: fail\n";
    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// swarm

int cmd_swarm(const nipso::SwarmRun& run, const std::string& out_path) {
    const nipso::SwarmStats stats = nipso::run_swarm(run);

    std::ostringstream cfg;
    cfg << "objective=" << nipso::objective_name(run.objective) << " n=" << run.swarm_size
        << " d=" << run.dimensions << " topology=" << nipso::topology_name(run.topology)
        << " w=" << fmt12(run.params.w) << " c1=" << fmt12(run.params.c1)
        << " c2=" << fmt12(run.params.c2) << " iters=" << run.iterations << " seed=" << run.seed
        << " init=" << fmt12(run.init.lo) << ":" << fmt12(run.init.hi);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << "# nipso " << kVersion << "\n"
            << "# seed=" << run.seed << "\n"
            << "# config: " << cfg.str() << "\n"
            << "t,step_size,best_value\n";
        char buf[96];
        for (std::size_t t = 0; t < stats.step_sizes.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g", t + 1, stats.step_sizes[t],
                          stats.best_values[t]);
            out << buf << '\n';
        }
        if (!out) throw std::runtime_error("write failed: " + out_path);
    }

    const std::size_t n_iters = stats.step_sizes.size();
    double tail_median = 0.0;
    if (n_iters > 0) {
        const std::size_t tail_len = std::max<std::size_t>(1, n_iters / 10);
        std::vector<double> tail(stats.step_sizes.end() - static_cast<std::ptrdiff_t>(tail_len),
                                 stats.step_sizes.end());
        std::sort(tail.begin(), tail.end());
        tail_median = tail[tail.size() / 2];
    }
    const double max_step =
        n_iters == 0 ? 0.0 : *std::max_element(stats.step_sizes.begin(), stats.step_sizes.end());

    std::cout << "nipso " << kVersion << "\n"
              << "config: " << cfg.str() << "\n"
              << "iterations_run: " << n_iters << "\n"
              << "guard_tripped: " << (stats.guard_tripped ? "yes" : "no") << "\n"
              << "best_value: " << fmt12(n_iters ? stats.best_values.back() : 0.0) << "\n"
              << "tail_median_step: " << fmt12(tail_median) << "\n"
              << "max_step: " << fmt12(max_step) << "\n";
    if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability analysis for informer-based particle swarms"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("nipso ") + kVersion);

    VariantFlags check_flags;
    bool check_json = false;
    auto* check = app.add_subcommand("check", "stability verdicts for one parameter point");
    add_variant_flags(check, check_flags);
    check->add_flag("--json", check_json, "emit a JSON document instead of text");

    VariantFlags region_flags;
    std::string axis1_text, axis2_text, region_out;
    auto* region = app.add_subcommand("region", "CSV stability grid over two parameter axes");
    add_variant_flags(region, region_flags);
    region->add_option("--axis1", axis1_text, "swept axis, name:lo:hi:res")->required();
    region->add_option("--axis2", axis2_text, "swept axis, name:lo:hi:res")->required();
    region->add_option("--out", region_out, "output CSV path")->required();

    int verify_max = 10;
    std::int64_t verify_samples = 100000;
    std::uint64_t verify_seed = 0;
    std::string verify_json;
    auto* verify = app.add_subcommand("verify", "order-2 criteria sufficiency sweep");
    verify->add_option("--max-informers", verify_max, "sweep informer counts 1..N");
    verify->add_option("--samples", verify_samples, "criteria-satisfying configs per count");
    auto* verify_seed_opt = verify->add_option("--seed", verify_seed, "rng seed");
    verify->add_option("--json", verify_json, "also write a JSON report here");

    std::string sim_config, sim_out_dir;
    std::uint64_t sim_seed = 0;
    double sim_mean_tol = 0.0, sim_var_tol = 0.05;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo recurrence run with verdicts");
    simulate->add_option("--config", sim_config, "run config file")->required();
    simulate->add_option("--out-dir", sim_out_dir, "existing output directory")->required();
    auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "override the config seed");
    auto* sim_mean_opt =
        simulate->add_option("--mean-tol", sim_mean_tol,
                             "absolute mean tolerance (default: 3 standard errors)");
    simulate->add_option("--var-tol", sim_var_tol, "relative variance tolerance");

    nipso::SwarmRun swarm_run;
    std::string swarm_objective = "sphere", swarm_topology = "global", swarm_out;
    std::string swarm_init;
    auto* swarm = app.add_subcommand("swarm", "full-swarm benchmark run");
    swarm->add_option("--objective", swarm_objective,
                      "sphere | rastrigin | rosenbrock | absolute-value");
    swarm->add_option("--n,--swarm-size", swarm_run.swarm_size, "swarm size");
    swarm->add_option("--d,--dimensions", swarm_run.dimensions, "dimensions");
    swarm->add_option("--topology", swarm_topology, "global | ring");
    swarm->add_option("--w", swarm_run.params.w, "inertia weight");
    swarm->add_option("--c1", swarm_run.params.c1, "cognitive coefficient");
    swarm->add_option("--c2", swarm_run.params.c2, "social coefficient");
    swarm->add_option("--iters,--iterations", swarm_run.iterations, "iterations");
    auto* swarm_seed_opt = swarm->add_option("--seed", swarm_run.seed, "rng seed");
    swarm->add_option("--init", swarm_init, "init hypercube lo:hi (default per objective)");
    swarm->add_option("--out", swarm_out, "per-iteration CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check, check_flags, check_json);
        if (region->parsed())
            return cmd_region(region, region_flags, axis1_text, axis2_text, region_out);
        if (verify->parsed()) {
            if (verify_seed_opt->count() == 0) verify_seed = env_seed();
            return cmd_verify(verify_max, verify_samples, verify_seed, verify_json);
        }
        if (simulate->parsed())
            return cmd_simulate(sim_config, sim_out_dir, sim_seed_opt->count() > 0, sim_seed,
                                sim_mean_opt->count() > 0, sim_mean_tol, sim_var_tol);
        if (swarm->parsed()) {
            swarm_run.objective = nipso::parse_objective(swarm_objective);
            swarm_run.topology = nipso::parse_topology(swarm_topology);
            if (swarm_seed_opt->count() == 0) swarm_run.seed = env_seed();
            if (swarm->count("--init")) {
                const auto colon = swarm_init.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("--init must be lo:hi");
                swarm_run.init.lo = std::stod(swarm_init.substr(0, colon));
                swarm_run.init.hi = std::stod(swarm_init.substr(colon + 1));
            } else {
                swarm_run.init = nipso::objective_bounds(swarm_run.objective);
            }
            return cmd_swarm(swarm_run, swarm_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
