#ifndef NIPSO_VARIANTS_HPP
#define NIPSO_VARIANTS_HPP

#include <vector>

#include "nipso/coeff_dist.hpp"

namespace nipso {

/// Canonical PSO: inertia w, cognitive c1, social c2. Instability is a
/// verdict, never an input error, so no range checks beyond finiteness.
struct CpsoParams {
    double w = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Fully informed PSO: every one of the n_size neighbours contributes an
/// informer weighted U(0, c_hat)/n_size.
struct FipsParams {
    double w = 0.0;
    double c_hat = 0.0;
    int n_size = 1;
};

/// Unified PSO: blend of the global-best and local-best updates with
/// unification factor u in [0, 1].
struct UpsoParams {
    double w = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double u = 0.5;
};

/// Two informers held constant at (y, yhat); theta0 = const(w),
/// theta1 = c1 U(0,1), theta2 = c2 U(0,1).
NipsoSpec cpso_spec(const CpsoParams& p, double y, double yhat);

/// n_size informers held constant at informer_means (length must equal
/// n_size); each coefficient is U(0, c_hat / n_size).
NipsoSpec fips_spec(const FipsParams& p, const std::vector<double>& informer_means);

/// Three informers held constant at (y, g, yhat): the personal best, the
/// local best, and the global best; theta1 = c1 (u U + (1-u) U'),
/// theta2 = c2 u U, theta3 = c2 (1-u) U'. Throws when u is outside [0, 1].
NipsoSpec upso_spec(const UpsoParams& p, double y, double g, double yhat);

/// Upper bound on c1 + c2 in the CPSO order-2 criterion:
///   4 (1-w^2) / (1 - w + (c1^2 + c2^2)(1 + w) / (3 (c1 + c2)^2)).
double cpso_bound(const CpsoParams& p);

/// The c1 = c2 reduction of cpso_bound: 24 (1-w^2) / (7 - 5w).
double cpso_equal_bound(double w);

/// Order-2 verdict: -1 < w < 1 and 0 < c1 + c2 < cpso_bound.
bool cpso_criterion(const CpsoParams& p);

/// Upper bound on c_hat / 2 in the FIPS order-2 criterion:
///   6 n (1-w^2) / (3n + 1 + w (1 - 3n)).
double fips_bound(const FipsParams& p);

/// Order-2 verdict: -1 < w < 1 and 0 < c_hat / 2 < fips_bound.
bool fips_criterion(const FipsParams& p);

/// Upper bound on c1 + c2 in the UPSO order-2 criterion:
///   4 (1-w^2) / (1 - w + (c1^2 + c2^2)(u^2 + (1-u)^2)(1 + w) / (3 (c1 + c2)^2)).
double upso_bound(const UpsoParams& p);

/// The c1 = c2 reduction of upso_bound:
///   24 (1-w^2) / (7 - 5w + 2 (u^2 - u)(1 + w)).
double upso_equal_bound(double w, double u);

/// Order-2 verdict: -1 < w < 1 and 0 < c1 + c2 < upso_bound.
bool upso_criterion(const UpsoParams& p);

}  // namespace nipso

#endif  // NIPSO_VARIANTS_HPP
