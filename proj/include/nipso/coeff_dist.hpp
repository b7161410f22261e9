#ifndef NIPSO_COEFF_DIST_HPP
#define NIPSO_COEFF_DIST_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nipso/rng.hpp"

namespace nipso {

/// A stochastic velocity-update coefficient with closed-form first and
/// second moments. The analysis layer consumes only mean()/variance();
/// the simulator draws through sample().
class CoefficientDistribution {
public:
    enum class Kind {
        Constant,       // degenerate at c
        Uniform,        // U(lo, hi)
        ScaledUniform,  // c * U(0,1)
        AffineMixture,  // a * U(0,1) + b * U(0,1), independent draws
        Gaussian,       // N(mu, sigma^2)
        Custom,         // declared moments + user sampler
    };

    /// Degenerate at zero; lets aggregates carrying a spec default-construct.
    CoefficientDistribution() : CoefficientDistribution(Kind::Constant, {0.0}) {}

    static CoefficientDistribution constant(double c);
    static CoefficientDistribution uniform(double lo, double hi);
    static CoefficientDistribution scaled_uniform(double c);
    static CoefficientDistribution affine_mixture(double a, double b);
    static CoefficientDistribution gaussian(double mean, double variance);
    /// Declared moments are authoritative for the stability criteria; the
    /// sampler is only validated against them. A null sampler defaults to
    /// a gaussian with the declared moments.
    static CoefficientDistribution custom(double mean, double variance,
                                          std::function<double(Rng&)> sampler = {});

    Kind kind() const { return kind_; }
    double mean() const;
    double variance() const;
    double sample(Rng& rng) const;

    /// Parameters in kind order (e.g. {lo, hi} for Uniform).
    const std::vector<double>& params() const { return params_; }

    /// Round-trips through parse_distribution().
    std::string to_string() const;

private:
    CoefficientDistribution(Kind kind, std::vector<double> params,
                            std::function<double(Rng&)> sampler = {});

    Kind kind_;
    std::vector<double> params_;
    std::function<double(Rng&)> sampler_;  // Custom only
};

/// A particle informer as a time-dependent random process whose mean and
/// variance settle to declared limits. The fixed-point analysis consumes
/// only the limits; the simulator draws per time step through sample().
class InformerProcess {
public:
    /// Stagnation model: the informer sits at `position` forever.
    static InformerProcess constant(double position);
    /// Time-invariant gaussian draws around limit_mean.
    static InformerProcess gaussian(double limit_mean, double limit_variance);
    /// Mean decays geometrically onto the limit: E[z(t)] = limit_mean + amplitude * rate^t,
    /// |rate| < 1, with gaussian noise of the limiting variance at every step.
    static InformerProcess decaying(double limit_mean, double limit_variance,
                                    double amplitude, double rate);

    double limit_mean() const { return limit_mean_; }
    double limit_variance() const { return limit_variance_; }
    double sample(std::int64_t t, Rng& rng) const;

    std::string to_string() const;

private:
    InformerProcess(double limit_mean, double limit_variance,
                    std::function<double(std::int64_t, Rng&)> generator,
                    std::string repr);

    double limit_mean_;
    double limit_variance_;
    std::function<double(std::int64_t, Rng&)> generator_;
    std::string repr_;
};

/// One full model instance: the momentum coefficient plus an ordered list
/// of (coefficient, informer) pairs.
struct NipsoSpec {
    struct Informer {
        CoefficientDistribution coeff;
        InformerProcess process;
    };

    CoefficientDistribution theta0;
    std::vector<Informer> informers;

    std::size_t informer_count() const { return informers.size(); }

    /// Throws std::invalid_argument unless the spec has at least one
    /// informer and every component has finite parameters.
    void validate() const;
};

/// Parse a distribution literal:
///   const(0.7) | unif(0,1.4) | scaledunif(1.4) | mix(0.25,1.4)
///   | gauss(0,0.1) | custom(mean=...,var=...)
/// mix(u,c) is the two-uniform blend c*(u*U(0,1) + (1-u)*U(0,1)).
/// Throws std::invalid_argument on malformed input.
CoefficientDistribution parse_distribution(const std::string& text);

/// Parse an informer-process literal:
///   const(0.5) | gauss(0.5,0.1) | decay(0.5,0.1,2.0,0.9)
InformerProcess parse_informer(const std::string& text);

}  // namespace nipso

#endif  // NIPSO_COEFF_DIST_HPP
