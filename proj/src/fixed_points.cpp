#include "nipso/fixed_points.hpp"

#include <cmath>
#include <stdexcept>

#include "nipso/stability.hpp"

namespace nipso {

double mean_fixed_point(const NipsoSpec& spec) {
    spec.validate();
    double num = 0.0;
    double psi = 0.0;
    for (const auto& inf : spec.informers) {
        const double e = inf.coeff.mean();
        num += e * inf.process.limit_mean();
        psi += e;
    }
    if (psi == 0.0) throw std::domain_error("mean_fixed_point: psi = 0, no fixed point");
    return num / psi;
}

FixedPoint fixed_point(const NipsoSpec& spec) {
    const MomentSummary m = summarize(spec);
    if (!order1_stable(m).stable || !order2_stable(m).stable)
        throw std::domain_error("fixed_point: spec fails the order-1/order-2 criteria");

    FixedPoint fp;
    fp.mean = mean_fixed_point(spec);
    for (const auto& inf : spec.informers) {
        const double e = inf.coeff.mean();
        const double w = inf.coeff.variance();
        const double mz = inf.process.limit_mean();
        const double vz = inf.process.limit_variance();
        fp.kappa1 += e * e * vz + mz * mz * w + w * vz;
        fp.kappa2 += w * mz;
    }
    fp.kappa3 = m.phi;

    const double e0 = m.e_theta0;
    const double v0 = m.v_theta0;
    fp.denominator = 2.0 * m.psi * (1.0 - e0 * e0 - v0) - m.phi * (1.0 + e0) +
                     m.psi * m.psi * (e0 - 1.0);
    if (fp.denominator == 0.0)
        throw std::domain_error("fixed_point: zero variance denominator (criterion boundary)");
    fp.variance = (1.0 + e0) * (fp.kappa1 - 2.0 * fp.kappa2 * fp.mean + fp.kappa3 * fp.mean * fp.mean) /
                  fp.denominator;
    return fp;
}

double variance_fixed_point(const NipsoSpec& spec) { return fixed_point(spec).variance; }

double driving_second_moment(const NipsoSpec& spec) {
    const double ex = mean_fixed_point(spec);
    double k1 = 0.0;
    double k2 = 0.0;
    double phi = 0.0;
    for (const auto& inf : spec.informers) {
        const double e = inf.coeff.mean();
        const double w = inf.coeff.variance();
        const double mz = inf.process.limit_mean();
        const double vz = inf.process.limit_variance();
        k1 += e * e * vz + mz * mz * w + w * vz;
        k2 += w * mz;
        phi += w;
    }
    return k1 - 2.0 * k2 * ex + phi * ex * ex;
}

double general_variance(double e_alpha, double e_beta, double e_alpha2, double e_beta2,
                        double e_alphabeta, double e_d2) {
    if (e_beta == 1.0) throw std::domain_error("general_variance: E[beta] = 1");
    const double denom =
        1.0 - e_alpha2 - e_beta2 - 2.0 * e_alphabeta * e_alpha / (1.0 - e_beta);
    if (!(denom > 0.0))
        throw std::domain_error("general_variance: nonpositive denominator (not order-2 stable)");
    return e_d2 / denom;
}

}  // namespace nipso
