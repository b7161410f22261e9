#include "nipso/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "nipso/parallel.hpp"
#include "nipso/rng.hpp"

namespace nipso {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// One trajectory; x(t) for t = 1..steps accumulated into sum/sumsq at
/// index t-1. Returns the number of steps recorded before the guard (or
/// a non-finite value) was hit; == steps means the run completed.
std::size_t simulate_one(const RecurrenceRun& run, std::uint64_t run_index,
                         std::vector<double>& sum, std::vector<double>& sumsq) {
    Rng rng = Rng::stream(run.seed, run_index);
    double x = rng.uniform(run.initial_position.lo, run.initial_position.hi);
    double v = rng.uniform(run.initial_velocity.lo, run.initial_velocity.hi);
    double x_prev = x - v;  // history point consistent with the initial velocity
    const bool velocity_form = run.form == RecurrenceRun::Form::Velocity;

    for (std::int64_t t = 0; t < run.steps; ++t) {
        const double th0 = run.spec.theta0.sample(rng);
        double drive = 0.0;
        for (const auto& inf : run.spec.informers) {
            const double th = inf.coeff.sample(rng);
            const double z = inf.process.sample(t, rng);
            drive += th * (z - x);
        }
        double x_next;
        if (velocity_form) {
            v = th0 * v + drive;
            x_next = x + v;
        } else {
            x_next = x * (1.0 + th0) - th0 * x_prev + drive;
        }
        if (!(std::abs(x_next) <= kDivergenceGuard)) return static_cast<std::size_t>(t);
        const std::size_t idx = static_cast<std::size_t>(t);
        sum[idx] += x_next;
        sumsq[idx] += x_next * x_next;
        x_prev = x;
        x = x_next;
    }
    return static_cast<std::size_t>(run.steps);
}

}  // namespace

MomentTrajectory simulate_recurrence(const RecurrenceRun& run) {
    run.spec.validate();
    if (run.steps < 2) throw std::invalid_argument("simulate_recurrence: steps < 2");
    if (run.runs < 1) throw std::invalid_argument("simulate_recurrence: runs < 1");

    const std::size_t steps = static_cast<std::size_t>(run.steps);
    const std::size_t runs = static_cast<std::size_t>(run.runs);

    // Fixed block partition (independent of worker count) keyed per-run
    // streams make the result a pure function of (spec, seed). Blocks are
    // capped so the per-block accumulators stay within a memory budget.
    constexpr std::size_t kBlocks = 64;
    const std::size_t mem_cap = std::max<std::size_t>(1, (128ull << 20) / (16 * steps));
    const std::size_t n_blocks = std::min({kBlocks, runs, mem_cap});

    struct Block {
        std::vector<double> sum, sumsq;
        std::size_t cutoff = 0;
        std::size_t diverged = 0;
    };
    std::vector<Block> blocks(n_blocks);

    parallel_blocks(n_blocks, [&](std::size_t b) {
        const std::size_t per = runs / n_blocks;
        const std::size_t extra = runs % n_blocks;
        const std::size_t count = per + (b < extra ? 1 : 0);
        const std::size_t first = b * per + std::min(b, extra);
        Block& blk = blocks[b];
        blk.sum.assign(steps, 0.0);
        blk.sumsq.assign(steps, 0.0);
        blk.cutoff = steps;
        for (std::size_t r = 0; r < count; ++r) {
            const std::size_t reached =
                simulate_one(run, static_cast<std::uint64_t>(first + r), blk.sum, blk.sumsq);
            if (reached < steps) {
                ++blk.diverged;
                blk.cutoff = std::min(blk.cutoff, reached);
            }
        }
    });

    std::size_t cutoff = steps;
    std::size_t diverged_runs = 0;
    for (const auto& blk : blocks) {
        cutoff = std::min(cutoff, blk.cutoff);
        diverged_runs += blk.diverged;
    }

    MomentTrajectory traj;
    traj.diverged = diverged_runs > 0;
    traj.diverged_runs = diverged_runs;
    traj.mean_series.resize(cutoff);
    traj.var_series.resize(cutoff);
    const double n = static_cast<double>(runs);
    for (std::size_t t = 0; t < cutoff; ++t) {
        double s = 0.0;
        double s2 = 0.0;
        for (const auto& blk : blocks) {
            s += blk.sum[t];
            s2 += blk.sumsq[t];
        }
        const double mean = s / n;
        traj.mean_series[t] = mean;
        traj.var_series[t] = std::max(0.0, s2 / n - mean * mean);
    }

    if (cutoff > 0) {
        const std::size_t start = cutoff / 2;
        double tm = 0.0;
        double tv = 0.0;
        for (std::size_t t = start; t < cutoff; ++t) {
            tm += traj.mean_series[t];
            tv += traj.var_series[t];
        }
        const double window = static_cast<double>(cutoff - start);
        traj.tail_mean = tm / window;
        traj.tail_var = tv / window;
    }
    return traj;
}

ConvergenceVerdict convergence_verdict(const MomentTrajectory& traj, const FixedPoint& predicted,
                                       const Tolerances& tol) {
    if (traj.diverged || traj.mean_series.empty()) return ConvergenceVerdict{false, false};
    ConvergenceVerdict v;
    v.mean_ok = std::abs(traj.tail_mean - predicted.mean) <= tol.mean_abs;
    v.var_ok = std::abs(traj.tail_var - predicted.variance) <=
               tol.var_rel * std::abs(predicted.variance) + tol.var_abs;
    return v;
}

void write_trajectory_csv(std::ostream& out, const MomentTrajectory& traj) {
    out << "t,mean,variance\n";
    char buf[80];
    for (std::size_t t = 0; t < traj.mean_series.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g", t + 1, traj.mean_series[t],
                      traj.var_series[t]);
        out << buf << '\n';
    }
}

Objective parse_objective(const std::string& name) {
    if (name == "sphere") return Objective::Sphere;
    if (name == "rastrigin") return Objective::Rastrigin;
    if (name == "rosenbrock") return Objective::Rosenbrock;
    if (name == "absolute-value") return Objective::AbsoluteValue;
    throw std::invalid_argument("unknown objective: " + name);
}

std::string objective_name(Objective obj) {
    switch (obj) {
        case Objective::Sphere: return "sphere";
        case Objective::Rastrigin: return "rastrigin";
        case Objective::Rosenbrock: return "rosenbrock";
        case Objective::AbsoluteValue: return "absolute-value";
    }
    return "unknown";
}

Topology parse_topology(const std::string& name) {
    if (name == "global") return Topology::Global;
    if (name == "ring") return Topology::Ring;
    throw std::invalid_argument("unknown topology: " + name);
}

std::string topology_name(Topology t) { return t == Topology::Global ? "global" : "ring"; }

double evaluate_objective(Objective obj, const std::vector<double>& x) {
    double acc = 0.0;
    switch (obj) {
        case Objective::Sphere:
            for (double xk : x) acc += xk * xk;
            return acc;
        case Objective::Rastrigin:
            acc = 10.0 * static_cast<double>(x.size());
            for (double xk : x) acc += xk * xk - 10.0 * std::cos(kTwoPi * xk);
            return acc;
        case Objective::Rosenbrock:
            for (std::size_t k = 0; k + 1 < x.size(); ++k) {
                const double a = x[k + 1] - x[k] * x[k];
                const double b = 1.0 - x[k];
                acc += 100.0 * a * a + b * b;
            }
            return acc;
        case Objective::AbsoluteValue:
            for (double xk : x) acc += std::abs(xk);
            return acc;
    }
    throw std::invalid_argument("evaluate_objective: bad objective");
}

InitRange objective_bounds(Objective obj) {
    switch (obj) {
        case Objective::Sphere: return InitRange{-100.0, 100.0};
        case Objective::Rastrigin: return InitRange{-5.12, 5.12};
        case Objective::Rosenbrock: return InitRange{-30.0, 30.0};
        case Objective::AbsoluteValue: return InitRange{-100.0, 100.0};
    }
    return InitRange{-100.0, 100.0};
}

SwarmStats run_swarm(const SwarmRun& run) {
    if (run.swarm_size < 2) throw std::invalid_argument("run_swarm: swarm_size < 2");
    if (run.dimensions < 1) throw std::invalid_argument("run_swarm: dimensions < 1");
    if (run.iterations < 1) throw std::invalid_argument("run_swarm: iterations < 1");

    const int n = run.swarm_size;
    const int d = run.dimensions;
    Rng rng = Rng::stream(run.seed);

    std::vector<std::vector<double>> x(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(d)));
    std::vector<std::vector<double>> v(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (auto& xi : x)
        for (auto& xik : xi) xik = rng.uniform(run.init.lo, run.init.hi);

    auto y = x;     // personal bests start at the initial positions
    auto yhat = x;  // neighbourhood bests likewise
    std::vector<double> fy(static_cast<std::size_t>(n));
    std::vector<double> fyhat(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        fy[static_cast<std::size_t>(i)] =
            evaluate_objective(run.objective, y[static_cast<std::size_t>(i)]);
        fyhat[static_cast<std::size_t>(i)] = fy[static_cast<std::size_t>(i)];
    }

    SwarmStats stats;
    stats.step_sizes.reserve(static_cast<std::size_t>(run.iterations));
    stats.best_values.reserve(static_cast<std::size_t>(run.iterations));

    for (std::int64_t it = 0; it < run.iterations; ++it) {
        for (int i = 0; i < n; ++i) {
            const std::size_t si = static_cast<std::size_t>(i);
            const double fx = evaluate_objective(run.objective, x[si]);
            if (fx < fy[si]) {
                y[si] = x[si];
                fy[si] = fx;
            }
            // Propagate into every neighbourhood containing particle i.
            if (run.topology == Topology::Global) {
                for (int j = 0; j < n; ++j) {
                    const std::size_t sj = static_cast<std::size_t>(j);
                    if (fy[si] < fyhat[sj]) {
                        yhat[sj] = y[si];
                        fyhat[sj] = fy[si];
                    }
                }
            } else {
                for (int off = -1; off <= 1; ++off) {
                    const std::size_t sj = static_cast<std::size_t>((i + off + n) % n);
                    if (fy[si] < fyhat[sj]) {
                        yhat[sj] = y[si];
                        fyhat[sj] = fy[si];
                    }
                }
            }
        }

        double step_accum = 0.0;
        bool guard = false;
        for (int i = 0; i < n; ++i) {
            const std::size_t si = static_cast<std::size_t>(i);
            double norm2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const std::size_t sk = static_cast<std::size_t>(k);
                const double r1 = rng.uniform01();
                const double r2 = rng.uniform01();
                double& vk = v[si][sk];
                vk = run.params.w * vk + run.params.c1 * r1 * (y[si][sk] - x[si][sk]) +
                     run.params.c2 * r2 * (yhat[si][sk] - x[si][sk]);
                x[si][sk] += vk;
                norm2 += vk * vk;
                if (!(std::abs(x[si][sk]) <= kDivergenceGuard)) guard = true;
            }
            step_accum += std::sqrt(norm2);
        }
        stats.step_sizes.push_back(step_accum / static_cast<double>(n));
        stats.best_values.push_back(*std::min_element(fy.begin(), fy.end()));
        if (guard) {
            stats.guard_tripped = true;
            break;
        }
    }
    return stats;
}

}  // namespace nipso
