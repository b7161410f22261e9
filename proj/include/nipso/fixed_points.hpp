#ifndef NIPSO_FIXED_POINTS_HPP
#define NIPSO_FIXED_POINTS_HPP

#include "nipso/coeff_dist.hpp"

namespace nipso {

/// Limiting moments of the particle position under order-1/order-2
/// stability, together with the intermediate quantities of the variance
/// formula (useful for diagnosing a near-boundary denominator).
struct FixedPoint {
    double mean = 0.0;         // E_x, the psi-weighted average of informer means
    double variance = 0.0;     // V_x
    double kappa1 = 0.0;       // sum(E^2[theta] V[zeta] + E^2[zeta] V[theta] + V[theta] V[zeta])
    double kappa2 = 0.0;       // sum(V[theta] E[zeta])
    double kappa3 = 0.0;       // = phi
    double denominator = 0.0;  // variance-formula denominator; > 0 under stability
};

/// E_x = sum(E[theta_i] E[zeta_i]) / sum(E[theta_i]).
/// Throws std::domain_error when psi = 0 (no fixed point).
double mean_fixed_point(const NipsoSpec& spec);

/// V_x = (1 + E[theta0]) (kappa1 - 2 kappa2 E_x + kappa3 E_x^2) / denominator.
/// Throws std::domain_error when the spec fails the order-1 or order-2
/// criteria, or when the denominator vanishes (criterion boundary).
double variance_fixed_point(const NipsoSpec& spec);

/// Both limits plus intermediates; same preconditions as variance_fixed_point.
FixedPoint fixed_point(const NipsoSpec& spec);

/// Second moment of the driving term d = sum(theta_i (zeta_i - E_x)) at the
/// mean fixed point. Feeding this into general_variance() must reproduce
/// variance_fixed_point().
double driving_second_moment(const NipsoSpec& spec);

/// Variance fixed point of the general recurrence
///   x(t+1) = alpha x(t) + beta x(t-1) + d + const,
/// namely E[d^2] / (1 - E[a^2] - E[b^2] - 2 E[ab] E[a] / (1 - E[b])).
/// Throws std::domain_error when E[beta] = 1 or the denominator is not
/// positive (the recurrence is then not order-2 stable).
double general_variance(double e_alpha, double e_beta, double e_alpha2, double e_beta2,
                        double e_alphabeta, double e_d2);

}  // namespace nipso

#endif  // NIPSO_FIXED_POINTS_HPP
