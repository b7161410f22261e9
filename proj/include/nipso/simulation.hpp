#ifndef NIPSO_SIMULATION_HPP
#define NIPSO_SIMULATION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nipso/coeff_dist.hpp"
#include "nipso/fixed_points.hpp"
#include "nipso/variants.hpp"

namespace nipso {

/// Any |x| beyond this classifies the trajectory as diverged; statistics
/// stay clear of floating-point overflow.
inline constexpr double kDivergenceGuard = 1e15;

/// Initial value drawn uniformly from [lo, hi]; lo == hi pins it.
struct InitRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Monte Carlo run of the position recurrence. The velocity form and the
/// second-order form are algebraically identical; both are provided so the
/// equivalence is testable.
struct RecurrenceRun {
    enum class Form { SecondOrder, Velocity };

    NipsoSpec spec;
    std::int64_t steps = 1000;
    std::int64_t runs = 1;
    std::uint64_t seed = 0;
    InitRange initial_position{-5.0, 5.0};
    InitRange initial_velocity{0.0, 0.0};
    Form form = Form::SecondOrder;
};

/// Cross-run moment estimates per time step. Series cover t = 1..steps;
/// when some run trips the divergence guard the series are truncated at the
/// last step every run reached, so recorded statistics always aggregate all
/// runs. Tail stats average the final half of the recorded series.
struct MomentTrajectory {
    std::vector<double> mean_series;
    std::vector<double> var_series;
    bool diverged = false;
    std::size_t diverged_runs = 0;
    double tail_mean = 0.0;
    double tail_var = 0.0;
};

/// Simulate `runs` independent trajectories with fresh coefficient and
/// informer draws each step. Deterministic in (spec, seed) regardless of
/// worker count. Divergence is data, never an error.
MomentTrajectory simulate_recurrence(const RecurrenceRun& run);

struct Tolerances {
    double mean_abs = 0.0;    // absolute band around the predicted mean
    double var_rel = 0.05;    // relative band around the predicted variance
    double var_abs = 1e-12;   // floor so a zero predicted variance is passable
};

struct ConvergenceVerdict {
    bool mean_ok = false;
    bool var_ok = false;
};

/// Compare tail statistics against predicted limits. A diverged trajectory
/// fails both moments.
ConvergenceVerdict convergence_verdict(const MomentTrajectory& traj, const FixedPoint& predicted,
                                       const Tolerances& tol);

/// CSV with header t,mean,variance; one row per recorded step.
void write_trajectory_csv(std::ostream& out, const MomentTrajectory& traj);

enum class Objective { Sphere, Rastrigin, Rosenbrock, AbsoluteValue };
enum class Topology { Global, Ring };

/// Accepts sphere | rastrigin | rosenbrock | absolute-value; throws
/// std::invalid_argument otherwise.
Objective parse_objective(const std::string& name);
std::string objective_name(Objective obj);

Topology parse_topology(const std::string& name);
std::string topology_name(Topology t);

double evaluate_objective(Objective obj, const std::vector<double>& x);

/// Community-standard initialization box for the objective.
InitRange objective_bounds(Objective obj);

/// Full-swarm run of the canonical algorithm: synchronous personal-best and
/// neighbourhood-best updates followed by velocity/position updates.
struct SwarmRun {
    Objective objective = Objective::Sphere;
    int swarm_size = 20;
    int dimensions = 10;
    Topology topology = Topology::Global;
    CpsoParams params{0.7, 1.4, 1.4};
    std::int64_t iterations = 1000;
    std::uint64_t seed = 0;
    InitRange init{-100.0, 100.0};
};

struct SwarmStats {
    std::vector<double> step_sizes;   // mean ||x_i(t) - x_i(t-1)|| per iteration
    std::vector<double> best_values;  // best objective seen, per iteration
    bool guard_tripped = false;       // some |x| passed the divergence guard
};

SwarmStats run_swarm(const SwarmRun& run);

}  // namespace nipso

#endif  // NIPSO_SIMULATION_HPP
