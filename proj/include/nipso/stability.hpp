#ifndef NIPSO_STABILITY_HPP
#define NIPSO_STABILITY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nipso/coeff_dist.hpp"

namespace nipso {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat5 = std::array<std::array<double, 5>, 5>;

/// Verdicts within this distance of a criterion boundary are flagged
/// marginal: the sign of the verdict is then down to rounding.
inline constexpr double kBoundaryBand = 1e-9;

/// Closed-form moments of the position recurrence
///   x(t+1) = alpha * x(t) + beta * x(t-1) + gamma_t,
/// with alpha = (1 + theta0) - sum(theta_i) and beta = -theta0.
/// Everything downstream of the model is a function of these numbers.
struct MomentSummary {
    double e_theta0 = 0.0;    // E[theta0]
    double v_theta0 = 0.0;    // V[theta0]
    double psi = 0.0;         // sum of informer coefficient means
    double phi = 0.0;         // sum of informer coefficient variances
    double e_alpha = 0.0;
    double e_beta = 0.0;
    double e_alpha2 = 0.0;    // E[alpha^2]
    double e_beta2 = 0.0;     // E[beta^2]
    double e_alphabeta = 0.0; // E[alpha*beta]

    /// Populate the alpha/beta moments from (e_theta0, v_theta0, psi, phi).
    static MomentSummary from_aggregates(double e_theta0, double v_theta0,
                                         double psi, double phi);
};

struct StabilityReport {
    bool order1 = false;
    bool order2 = false;
    bool necessary_ok = false;
    bool marginal = false;       // some margin within kBoundaryBand of zero
    double rho_a = 0.0;          // spectral radius of the first-moment matrix
    double rho_b = 0.0;          // spectral radius of the second-moment matrix
    double order1_margin = 0.0;  // min slack over the order-1 inequalities
    double order2_margin = 0.0;  // min slack over the order-2 inequalities
    double psi = 0.0;
    double phi = 0.0;
    MomentSummary moments;

    /// Stable key/value JSON with all intermediate moments, for diffing.
    std::string to_json() const;
};

/// Closed-form moment summary of a model instance. Pure arithmetic, no sampling.
MomentSummary summarize(const NipsoSpec& spec);

/// First-moment transition matrix [[E[alpha], E[beta]], [1, 0]].
Mat2 order1_matrix(const MomentSummary& ms);

/// Second-moment transition matrix; block-diagonal with the first-moment
/// matrix on top and a 3x3 block in (E[alpha^2], E[beta^2], 2E[alpha*beta],
/// E[alpha], E[beta]) below.
Mat5 order2_matrix(const MomentSummary& ms);

/// Largest eigenvalue modulus. The 2x2 case solves the characteristic
/// quadratic; the 5x5 case splits into the diagonal blocks and solves a
/// quadratic plus a cubic. Throws std::invalid_argument on non-finite entries.
double spectral_radius(const Mat2& m);
double spectral_radius(const Mat5& m);

/// Moduli of the roots of x^3 + a x^2 + b x + c (all real coefficients).
std::array<double, 3> cubic_root_moduli(double a, double b, double c);

struct Verdict {
    bool stable = false;
    double margin = 0.0;  // min slack; negative means some inequality violated
};

/// Order-1 criterion: -1 < E[theta0] < 1 and 0 < psi < 2(E[theta0] + 1).
Verdict order1_stable(const MomentSummary& ms);

/// Order-2 criterion: V[theta0] < 1, |E[theta0]| < sqrt(1 - V[theta0]) and
/// 0 < psi < -2(E[theta0]^2 + V[theta0] - 1) /
///            (1 - E[theta0] + phi (1 + E[theta0]) / psi^2).
/// psi = 0 short-circuits to false; degenerate inputs never fault.
Verdict order2_stable(const MomentSummary& ms);

/// Necessary condition for order-2 stability under order-1 stability:
/// psi != 0 and 1 - E[a^2] - E[b^2] - 2 E[ab] E[a] / (1 - E[b]) > 0.
bool necessary_conditions(const MomentSummary& ms);

StabilityReport full_report(const MomentSummary& ms);
StabilityReport full_report(const NipsoSpec& spec);

/// One random moment configuration of the order-2 sufficiency sweep.
struct SweepConfig {
    double e_theta0 = 0.0;
    double v_theta0 = 0.0;
    std::vector<double> informer_means;
    std::vector<double> informer_variances;

    MomentSummary summary() const;
};

/// Draw a configuration with E[theta0] in (-1,1), V[theta0] in [0, 1-E^2),
/// per-informer means/variances log-uniform, rejected until the order-2
/// criteria hold.
SweepConfig random_stable_config(std::size_t informer_count, Rng& rng);

struct SweepResult {
    std::size_t informer_count = 0;
    std::size_t samples = 0;
    std::size_t rho_b_below_one = 0;
    std::vector<SweepConfig> counterexamples;  // configs with rho(B) >= 1
};

/// Empirical check that the order-2 criteria imply rho(B) < 1: generates
/// `samples` criteria-satisfying configs for the given informer count and
/// counts how many have rho(B) < 1.
SweepResult sufficiency_sweep(std::size_t informer_count, std::size_t samples,
                              std::uint64_t seed);

}  // namespace nipso

#endif  // NIPSO_STABILITY_HPP
