#include "nipso/variants.hpp"

#include <cmath>
#include <stdexcept>

namespace nipso {

NipsoSpec cpso_spec(const CpsoParams& p, double y, double yhat) {
    NipsoSpec spec{CoefficientDistribution::constant(p.w), {}};
    spec.informers.push_back(
        {CoefficientDistribution::scaled_uniform(p.c1), InformerProcess::constant(y)});
    spec.informers.push_back(
        {CoefficientDistribution::scaled_uniform(p.c2), InformerProcess::constant(yhat)});
    spec.validate();
    return spec;
}

NipsoSpec fips_spec(const FipsParams& p, const std::vector<double>& informer_means) {
    if (p.n_size < 1) throw std::invalid_argument("fips_spec: n_size < 1");
    if (informer_means.size() != static_cast<std::size_t>(p.n_size))
        throw std::invalid_argument("fips_spec: informer_means length != n_size");
    NipsoSpec spec{CoefficientDistribution::constant(p.w), {}};
    const double scale = p.c_hat / static_cast<double>(p.n_size);
    for (double mean : informer_means)
        spec.informers.push_back(
            {CoefficientDistribution::scaled_uniform(scale), InformerProcess::constant(mean)});
    spec.validate();
    return spec;
}

NipsoSpec upso_spec(const UpsoParams& p, double y, double g, double yhat) {
    if (!(p.u >= 0.0 && p.u <= 1.0)) throw std::invalid_argument("upso_spec: u outside [0, 1]");
    NipsoSpec spec{CoefficientDistribution::constant(p.w), {}};
    spec.informers.push_back(
        {CoefficientDistribution::affine_mixture(p.c1 * p.u, p.c1 * (1.0 - p.u)),
         InformerProcess::constant(y)});
    spec.informers.push_back(
        {CoefficientDistribution::scaled_uniform(p.c2 * p.u), InformerProcess::constant(g)});
    spec.informers.push_back(
        {CoefficientDistribution::scaled_uniform(p.c2 * (1.0 - p.u)),
         InformerProcess::constant(yhat)});
    spec.validate();
    return spec;
}

double cpso_bound(const CpsoParams& p) {
    const double sum = p.c1 + p.c2;
    if (sum == 0.0) throw std::domain_error("cpso_bound: c1 + c2 = 0");
    const double sq = p.c1 * p.c1 + p.c2 * p.c2;
    return 4.0 * (1.0 - p.w * p.w) /
           (1.0 - p.w + sq * (1.0 + p.w) / (3.0 * sum * sum));
}

double cpso_equal_bound(double w) { return 24.0 * (1.0 - w * w) / (7.0 - 5.0 * w); }

bool cpso_criterion(const CpsoParams& p) {
    if (!(p.w > -1.0 && p.w < 1.0)) return false;
    const double sum = p.c1 + p.c2;
    return sum > 0.0 && sum < cpso_bound(p);
}

double fips_bound(const FipsParams& p) {
    if (p.n_size < 1) throw std::invalid_argument("fips_bound: n_size < 1");
    const double n = static_cast<double>(p.n_size);
    return 6.0 * n * (1.0 - p.w * p.w) / (3.0 * n + 1.0 + p.w * (1.0 - 3.0 * n));
}

bool fips_criterion(const FipsParams& p) {
    if (!(p.w > -1.0 && p.w < 1.0)) return false;
    const double half = p.c_hat / 2.0;
    return half > 0.0 && half < fips_bound(p);
}

double upso_bound(const UpsoParams& p) {
    const double sum = p.c1 + p.c2;
    if (sum == 0.0) throw std::domain_error("upso_bound: c1 + c2 = 0");
    const double sq = p.c1 * p.c1 + p.c2 * p.c2;
    const double blend = p.u * p.u + (1.0 - p.u) * (1.0 - p.u);
    return 4.0 * (1.0 - p.w * p.w) /
           (1.0 - p.w + sq * blend * (1.0 + p.w) / (3.0 * sum * sum));
}

double upso_equal_bound(double w, double u) {
    return 24.0 * (1.0 - w * w) / (7.0 - 5.0 * w + 2.0 * (u * u - u) * (1.0 + w));
}

bool upso_criterion(const UpsoParams& p) {
    if (!(p.w > -1.0 && p.w < 1.0)) return false;
    const double sum = p.c1 + p.c2;
    return sum > 0.0 && sum < upso_bound(p);
}

}  // namespace nipso
