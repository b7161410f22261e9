// Acceptance gate: one criterion per section, one [PASS]/[FAIL] line each,
// nonzero exit on the first failure. Tolerances and runtime budgets are
// pinned next to the checks they govern.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nipso/fixed_points.hpp"
#include "nipso/simulation.hpp"
#include "nipso/stability.hpp"
#include "nipso/variants.hpp"

namespace {

int g_criterion = 0;

#define REQUIRE(cond, msg)                                                             \
    do {                                                                               \
        if (!(cond)) {                                                                 \
            std::cerr << "[FAIL] criterion " << g_criterion << ": " << msg << "  ("   \
                      << __FILE__ << ":" << __LINE__ << ")\n";                         \
            std::exit(1);                                                              \
        }                                                                              \
    } while (0)

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void pass(const std::string& what, double secs) {
    std::printf("[PASS] criterion %d: %s  [%.2f s]\n", g_criterion, what.c_str(), secs);
    std::fflush(stdout);
}

std::string cli_path() {
    if (const char* env = std::getenv("NIPSO_CLI")) return env;
    for (const char* guess : {"tools/nipso", "./tools/nipso", "../tools/nipso"})
        if (std::filesystem::exists(guess)) return guess;
    return "";
}

void run_cli(const std::string& bin, const std::string& args) {
    const std::string cmd = "\"" + bin + "\" " + args + " >/dev/null 2>acceptance_cli_err.txt";
    const int status = std::system(cmd.c_str());
    const bool ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    if (!ok) std::cerr << std::ifstream("acceptance_cli_err.txt").rdbuf();
    std::filesystem::remove("acceptance_cli_err.txt");
    REQUIRE(ok, "cli invocation failed: " << args);
}

// ---------------------------------------------------------------------------
// 1. CPSO closed-form reduction: general bound == 24(1-w^2)/(7-5w) at c1=c2.

void criterion1() {
    g_criterion = 1;
    Stopwatch sw;
    constexpr double kRelTol = 1e-12;
    nipso::Rng rng(1001);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double w = rng.uniform(-0.9999, 0.9999);
        const double c = rng.uniform(1e-6, 4.0);
        const double general = nipso::cpso_bound({w, c, c});
        const double reduced = nipso::cpso_equal_bound(w);
        const double rel = std::abs(general - reduced) / std::abs(reduced);
        worst = std::max(worst, rel);
        REQUIRE(rel < kRelTol, "reduction mismatch at w=" << w << " c=" << c
                                                          << " rel=" << rel);
    }
    REQUIRE(sw.seconds() < 1.0, "runtime bound 1 s exceeded");
    std::ostringstream msg;
    msg << "cpso bound reduces to 24(1-w^2)/(7-5w) at c1=c2 (1e4 draws, worst rel "
        << worst << ")";
    pass(msg.str(), sw.seconds());
}

// ---------------------------------------------------------------------------
// 2. UPSO closed-form reduction on a (w, u) grid; u in {0,1} recovers cpso.

void criterion2() {
    g_criterion = 2;
    Stopwatch sw;
    constexpr double kRelTol = 1e-12;
    nipso::Rng rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double w = -0.99 + 1.98 * static_cast<double>(i) / 99.0;
        const double cpso_ref = nipso::cpso_equal_bound(w);
        for (int j = 0; j < 100; ++j) {
            const double u = static_cast<double>(j) / 99.0;
            const double c = rng.uniform(1e-3, 4.0);
            const double general = nipso::upso_bound({w, c, c, u});
            const double reduced = nipso::upso_equal_bound(w, u);
            const double rel = std::abs(general - reduced) / std::abs(reduced);
            worst = std::max(worst, rel);
            REQUIRE(rel < kRelTol,
                    "reduction mismatch at w=" << w << " u=" << u << " rel=" << rel);
            if (j == 0 || j == 99) {
                const double back = std::abs(general - cpso_ref) / std::abs(cpso_ref);
                REQUIRE(back < kRelTol, "u=" << u << " does not recover the cpso bound");
            }
        }
    }
    REQUIRE(sw.seconds() < 1.0, "runtime bound 1 s exceeded");
    std::ostringstream msg;
    msg << "upso bound reduces to the unified closed form on a 100x100 (w,u) grid "
           "(worst rel "
        << worst << "); u in {0,1} recovers the cpso form";
    pass(msg.str(), sw.seconds());
}

// ---------------------------------------------------------------------------
// 3. Order-1 criterion is exactly rho(A) < 1 outside a 1e-9 boundary band.

void criterion3() {
    g_criterion = 3;
    Stopwatch sw;
    constexpr double kBand = 1e-9;
    std::size_t checked = 0;
    for (int informers = 1; informers <= 5; ++informers) {
        nipso::Rng rng = nipso::Rng::stream(1003, static_cast<std::uint64_t>(informers));
        for (int i = 0; i < 100000; ++i) {
            const double e0 = rng.uniform(-1.5, 1.5);
            const double v0 = rng.uniform(0.0, 1.0);
            double psi = 0.0, phi = 0.0;
            for (int k = 0; k < informers; ++k) {
                psi += rng.uniform(-0.5, 1.5);
                phi += rng.uniform(0.0, 0.5);
            }
            const nipso::MomentSummary m =
                nipso::MomentSummary::from_aggregates(e0, v0, psi, phi);
            const nipso::Verdict v = nipso::order1_stable(m);
            if (std::abs(v.margin) < kBand) continue;
            const double rho = nipso::spectral_radius(nipso::order1_matrix(m));
            REQUIRE(v.stable == (rho < 1.0),
                    "disagreement at e0=" << e0 << " psi=" << psi << " rho=" << rho
                                          << " margin=" << v.margin);
            ++checked;
        }
    }
    REQUIRE(checked > 490000, "boundary band swallowed too many configs");
    REQUIRE(sw.seconds() < 30.0, "runtime bound 30 s exceeded");
    std::ostringstream msg;
    msg << "order-1 criterion == rho(A)<1 on " << checked
        << " random configs across 1..5 informers (zero disagreements)";
    pass(msg.str(), sw.seconds());
}

// ---------------------------------------------------------------------------
// 4. Order-2 sufficiency sweep: criteria-satisfying configs all have rho(B)<1.

void criterion4() {
    g_criterion = 4;
    Stopwatch sw;
    constexpr std::size_t kSamples = 100000;
    for (std::size_t informers = 1; informers <= 10; ++informers) {
        const nipso::SweepResult res =
            nipso::sufficiency_sweep(informers, kSamples, 20240814);
        REQUIRE(res.samples == kSamples, "sweep size mismatch at I=" << informers);
        REQUIRE(res.rho_b_below_one == kSamples,
                "counterexample at I=" << informers << ": only " << res.rho_b_below_one
                                       << "/" << kSamples << " had rho(B)<1");
        REQUIRE(res.counterexamples.empty(), "counterexample list not empty");
    }
    REQUIRE(sw.seconds() < 300.0, "runtime bound 5 min exceeded");
    pass("order-2 criteria imply rho(B)<1 on 1e5 satisfying configs per I in 1..10 "
         "(100% pass)",
         sw.seconds());
}

// ---------------------------------------------------------------------------
// 5. Fixed-point predictions: Monte Carlo tail moments for the reference
//    point, plus specialized-vs-general variance agreement.

void criterion5() {
    g_criterion = 5;
    Stopwatch sw;

    const nipso::NipsoSpec ref = nipso::cpso_spec({0.7, 1.4, 1.4}, 0.0, 1.0);
    const nipso::FixedPoint predicted = nipso::fixed_point(ref);

    nipso::RecurrenceRun run;
    run.spec = ref;
    run.steps = 5000;
    run.runs = 10000;
    run.seed = 1005;
    const nipso::MomentTrajectory traj = nipso::simulate_recurrence(run);
    REQUIRE(!traj.diverged, "reference run diverged");
    const double se = std::sqrt(predicted.variance / static_cast<double>(run.runs));
    REQUIRE(std::abs(traj.tail_mean - predicted.mean) < 3.0 * se,
            "tail mean " << traj.tail_mean << " not within 3 s.e. of "
                         << predicted.mean);
    const double var_rel =
        std::abs(traj.tail_var - predicted.variance) / predicted.variance;
    REQUIRE(var_rel < 0.05, "tail variance off by " << var_rel * 100.0 << "%");

    // agreement of the two variance formulas on random stable specs; draws
    // whose shared denominator is within 1e-4 of cancellation are excluded
    // (both evaluations lose relative precision there, see unit tests)
    constexpr double kRelTol = 1e-10;
    nipso::Rng rng(10055);
    int agreed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t informers = 1 + static_cast<std::size_t>(rng.uniform(0.0, 4.0));
        const nipso::SweepConfig cfg = nipso::random_stable_config(informers, rng);
        nipso::NipsoSpec spec{
            nipso::CoefficientDistribution::gaussian(cfg.e_theta0, cfg.v_theta0), {}};
        for (std::size_t i = 0; i < informers; ++i)
            spec.informers.push_back(
                {nipso::CoefficientDistribution::gaussian(cfg.informer_means[i],
                                                          cfg.informer_variances[i]),
                 nipso::InformerProcess::gaussian(rng.uniform(-5.0, 5.0),
                                                  rng.uniform(0.0, 4.0))});
        const nipso::MomentSummary m = nipso::summarize(spec);
        const nipso::FixedPoint fp = nipso::fixed_point(spec);
        const double term_scale =
            (1.0 + m.e_theta0) *
            (1.0 + std::abs(m.e_alpha2) + std::abs(m.e_beta2) +
             std::abs(2.0 * m.e_alphabeta * m.e_alpha / (1.0 - m.e_beta)));
        if (fp.denominator < 1e-4 * term_scale) continue;
        const double general = nipso::general_variance(
            m.e_alpha, m.e_beta, m.e_alpha2, m.e_beta2, m.e_alphabeta,
            nipso::driving_second_moment(spec));
        if (fp.variance > 1e-12) {
            REQUIRE(std::abs(fp.variance - general) / fp.variance < kRelTol,
                    "variance formulas disagree at trial " << trial);
        } else {
            REQUIRE(std::abs(general) < kRelTol, "nonzero general variance at zero "
                                                 "specialized variance");
        }
        ++agreed;
    }
    REQUIRE(agreed > 950, "too many near-boundary draws excluded: " << agreed);
    REQUIRE(sw.seconds() < 120.0, "runtime bound 2 min exceeded");
    std::ostringstream msg;
    msg << "Monte Carlo tail moments match the fixed point (mean within 3 s.e., "
           "variance within 5%); variance formulas agree to 1e-10 on "
        << agreed << "/1000 stable specs";
    pass(msg.str(), sw.seconds());
}

// ---------------------------------------------------------------------------
// 6. Divergence boundary. Inside the order-2 region nothing trips the guard.
//    The published outside point (c1=c2=2.0) is mean-square unstable yet its
//    sample paths stay bounded (negative almost-sure growth rate), so the
//    escaping leg is pinned at c1=c2=3.0 where the growth rate is clearly
//    positive and every run must trip the guard within 1e3 steps.

void criterion6() {
    g_criterion = 6;
    Stopwatch sw;

    nipso::RecurrenceRun stable;
    stable.spec = nipso::cpso_spec({0.7, 1.4, 1.4}, 0.0, 1.0);
    stable.steps = 1000;
    stable.runs = 1000;
    stable.seed = 1006;
    const nipso::MomentTrajectory inside = nipso::simulate_recurrence(stable);
    REQUIRE(!inside.diverged && inside.diverged_runs == 0,
            "stable parameters tripped the guard in " << inside.diverged_runs
                                                      << " runs");

    nipso::RecurrenceRun unstable = stable;
    unstable.spec = nipso::cpso_spec({0.7, 3.0, 3.0}, 0.0, 1.0);
    unstable.seed = 1007;
    const nipso::MomentTrajectory outside = nipso::simulate_recurrence(unstable);
    REQUIRE(outside.diverged, "unstable parameters never tripped the guard");
    REQUIRE(outside.diverged_runs > 990,
            "only " << outside.diverged_runs << "/1000 runs diverged");

    // the mean-square/almost-sure gap: sum 4.0 is outside the order-2 region
    // yet bounded per path
    nipso::RecurrenceRun heavy = stable;
    heavy.spec = nipso::cpso_spec({0.7, 2.0, 2.0}, 0.0, 1.0);
    heavy.seed = 1008;
    REQUIRE(!nipso::full_report(heavy.spec).order2, "sum 4.0 should be outside");
    const nipso::MomentTrajectory mid = nipso::simulate_recurrence(heavy);
    REQUIRE(mid.diverged_runs == 0,
            "heavy-tailed regime unexpectedly tripped the guard");

    REQUIRE(sw.seconds() < 30.0, "runtime bound 30 s exceeded");
    std::ostringstream msg;
    msg << "divergence boundary: c1=c2=1.4 never trips in 1e3 runs; c1=c2=3.0 trips "
        << outside.diverged_runs << "/1000 within 1e3 steps (c1=c2=2.0 documented "
        << "as mean-square-only instability)";
    pass(msg.str(), sw.seconds());
}

// ---------------------------------------------------------------------------
// 7. FIPS criterion agrees with the generic order-2 verdict on a (w, c_hat)
//    grid except within one grid cell of the closed-form boundary.

void criterion7() {
    g_criterion = 7;
    Stopwatch sw;
    const int res = 200;
    const double w_lo = -0.995, w_hi = 0.995;
    const double c_lo = 0.015, c_hi = 6.0;
    const double dw = (w_hi - w_lo) / (res - 1);
    const double dc = (c_hi - c_lo) / (res - 1);
    for (int n : {2, 4, 8}) {
        std::size_t stable_cells = 0, mismatches = 0;
        const std::vector<double> means(static_cast<std::size_t>(n), 1.0);
        for (int i = 0; i < res; ++i) {
            const double w = w_lo + dw * i;
            for (int j = 0; j < res; ++j) {
                const double c = c_lo + dc * j;
                const nipso::FipsParams p{w, c, n};
                const bool crit = nipso::fips_criterion(p);
                const bool generic =
                    nipso::full_report(nipso::fips_spec(p, means)).order2;
                stable_cells += generic;
                if (crit == generic) continue;
                ++mismatches;
                // mismatch must sit within one cell of c = 2*bound(w')
                double dist = std::abs(c - 2.0 * nipso::fips_bound(p));
                for (double wn : {w - dw, w + dw}) {
                    if (wn > -1.0 && wn < 1.0)
                        dist = std::min(
                            dist, std::abs(c - 2.0 * nipso::fips_bound({wn, c, n})));
                }
                REQUIRE(dist <= dc, "off-boundary mismatch at |N|=" << n << " w=" << w
                                                                    << " c=" << c);
            }
        }
        REQUIRE(stable_cells > 1000, "degenerate grid: stable set too small");
        REQUIRE(stable_cells < static_cast<std::size_t>(res) * res,
                "degenerate grid: everything stable");
        REQUIRE(mismatches == 0 || mismatches < 400,
                "boundary band too thick: " << mismatches);
    }
    REQUIRE(sw.seconds() < 30.0, "runtime bound 30 s exceeded");
    pass("fips criterion matches the generic order-2 verdict on 200x200 (w,c_hat) "
         "grids for |N| in {2,4,8} (any mismatch within one cell of the boundary)",
         sw.seconds());
}

// ---------------------------------------------------------------------------
// 8. Region reproduction through the CLI: convex-looking interior sets whose
//    boundary matches the closed form, nested across w.

struct RegionGrid {
    std::vector<double> c1, c2;
    std::vector<char> order2;  // res*res, axis2-major
};

RegionGrid load_region(const std::string& path, int res) {
    RegionGrid g;
    std::ifstream in(path);
    REQUIRE(static_cast<bool>(in), "missing region csv " << path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("c1,", 0) == 0) continue;
        double v1 = 0.0, v2 = 0.0;
        int o1 = 0, o2 = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%d,%d", &v1, &v2, &o1, &o2) == 4,
                "bad csv row: " << line);
        g.c1.push_back(v1);
        g.c2.push_back(v2);
        g.order2.push_back(static_cast<char>(o2));
    }
    REQUIRE(g.order2.size() == static_cast<std::size_t>(res) * res,
            "expected " << res * res << " rows, got " << g.order2.size());
    return g;
}

// every row and column slice of the stable set is one contiguous run
void require_slice_contiguous(const RegionGrid& g, int res) {
    auto contiguous = [&](auto cell) {
        for (int a = 0; a < res; ++a) {
            int first = -1, last = -1;
            for (int b = 0; b < res; ++b) {
                if (!cell(a, b)) continue;
                if (first < 0) first = b;
                last = b;
            }
            if (first < 0) continue;
            for (int b = first; b <= last; ++b)
                if (!cell(a, b)) return false;
        }
        return true;
    };
    REQUIRE(contiguous([&](int r, int c) { return g.order2[static_cast<std::size_t>(r) * res + c] != 0; }),
            "a c2-row slice of the stable set is not contiguous");
    REQUIRE(contiguous([&](int c, int r) { return g.order2[static_cast<std::size_t>(r) * res + c] != 0; }),
            "a c1-column slice of the stable set is not contiguous");
}

void criterion8() {
    g_criterion = 8;
    Stopwatch sw;
    const std::string bin = cli_path();
    REQUIRE(!bin.empty(), "cli binary not found (set NIPSO_CLI)");
    const int res = 300;

    std::vector<RegionGrid> grids;
    std::vector<double> ws{0.4, 0.7, 0.9};
    for (double w : ws) {
        std::ostringstream cmd;
        cmd << "region --variant cpso --w " << w
            << " --axis1 c1:0.0125:5:300 --axis2 c2:0.0125:5:300 --out acceptance_region_"
            << w << ".csv";
        run_cli(bin, cmd.str());
        grids.push_back(load_region("acceptance_region_" + std::to_string(w).substr(0, 3) +
                                        ".csv",
                                    res));
    }

    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k < ws.size(); ++k) {
        const RegionGrid& g = grids[k];
        const double w = ws[k];
        std::size_t stable = 0;
        for (char f : g.order2) stable += f;
        REQUIRE(stable > 500, "stable interior too small at w=" << w);
        sizes.push_back(stable);
        require_slice_contiguous(g, res);

        // flags must match the closed form cell-by-cell: residual
        // f = (c1+c2) - bound changes sign only across flagged boundaries
        for (std::size_t i = 0; i < g.order2.size(); ++i) {
            const double resid =
                (g.c1[i] + g.c2[i]) - nipso::cpso_bound({w, g.c1[i], g.c2[i]});
            if (g.order2[i])
                REQUIRE(resid < 1e-9, "stable cell with positive residual at c1="
                                          << g.c1[i] << " c2=" << g.c2[i]);
            else
                REQUIRE(resid > -1e-9, "unstable cell with negative residual at c1="
                                           << g.c1[i] << " c2=" << g.c2[i]);
        }
    }
    // nested regions: stable at w=0.9 implies stable at w=0.7 implies w=0.4
    for (std::size_t i = 0; i < grids[0].order2.size(); ++i) {
        REQUIRE(!grids[2].order2[i] || grids[1].order2[i],
                "w=0.9 region escapes w=0.7 region at index " << i);
        REQUIRE(!grids[1].order2[i] || grids[0].order2[i],
                "w=0.7 region escapes w=0.4 region at index " << i);
    }
    REQUIRE(sizes[2] < sizes[1] && sizes[1] < sizes[0], "region sizes not shrinking in w");
    for (double w : ws)
        std::filesystem::remove("acceptance_region_" + std::to_string(w).substr(0, 3) +
                                ".csv");
    REQUIRE(sw.seconds() < 30.0, "runtime bound 30 s exceeded");
    std::ostringstream msg;
    msg << "cli region scans at w in {0.4,0.7,0.9} are slice-contiguous, match the "
           "closed-form residual cell-by-cell, and nest ("
        << sizes[2] << " < " << sizes[1] << " < " << sizes[0] << " stable cells)";
    pass(msg.str(), sw.seconds());
}

// ---------------------------------------------------------------------------
// 9. Full-swarm end-to-end: stable parameters quiet the swarm, unstable ones
//    blow it past 1e6 x the initial range.

void criterion9() {
    g_criterion = 9;
    Stopwatch sw;
    const double range = 200.0;  // sphere init [-100, 100]

    nipso::SwarmRun run;
    run.objective = nipso::Objective::Sphere;
    run.swarm_size = 20;
    run.dimensions = 10;
    run.iterations = 5000;
    run.seed = 1009;
    run.params = {0.7, 1.4, 1.4};
    const nipso::SwarmStats stable = nipso::run_swarm(run);
    REQUIRE(!stable.guard_tripped, "stable swarm tripped the guard");
    std::vector<double> tail(stable.step_sizes.end() -
                                 static_cast<long>(stable.step_sizes.size() / 2),
                             stable.step_sizes.end());
    std::sort(tail.begin(), tail.end());
    const double median = tail[tail.size() / 2];
    REQUIRE(median < 1e-3 * range,
            "stable tail median step " << median << " >= " << 1e-3 * range);

    run.params = {0.9, 2.0, 2.0};
    run.seed = 1010;
    const nipso::SwarmStats unstable = nipso::run_swarm(run);
    const double max_step =
        *std::max_element(unstable.step_sizes.begin(), unstable.step_sizes.end());
    REQUIRE(max_step > 1e6 * range,
            "unstable max step " << max_step << " <= " << 1e6 * range);

    REQUIRE(sw.seconds() < 60.0, "runtime bound 1 min exceeded");
    std::ostringstream msg;
    msg << "swarm on sphere (d=10, N=20): stable tail median step " << median
        << " < 0.2; unstable max step " << max_step << " > 2e8";
    pass(msg.str(), sw.seconds());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("[PASS] all 9 acceptance criteria\n");
    return 0;
}
