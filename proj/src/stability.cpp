#include "nipso/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "nipso/parallel.hpp"
#include "json.hpp"

namespace nipso {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool finite(double x) { return std::isfinite(x); }

// One Newton step on x^3 + a x^2 + b x + c, skipped near critical points.
double polish_cubic_root(double a, double b, double c, double x) {
    for (int i = 0; i < 2; ++i) {
        const double f = ((x + a) * x + b) * x + c;
        const double fp = (3.0 * x + 2.0 * a) * x + b;
        if (std::abs(fp) < 1e-12 * std::max(1.0, std::abs(x))) break;
        const double step = f / fp;
        if (!std::isfinite(step)) break;
        x -= step;
    }
    return x;
}

}  // namespace

MomentSummary MomentSummary::from_aggregates(double e_theta0, double v_theta0, double psi,
                                             double phi) {
    MomentSummary m;
    m.e_theta0 = e_theta0;
    m.v_theta0 = v_theta0;
    m.psi = psi;
    m.phi = phi;
    const double e0 = e_theta0;
    const double v0 = v_theta0;
    m.e_alpha = 1.0 + e0 - psi;
    m.e_beta = -e0;
    m.e_alpha2 = 1.0 + 2.0 * e0 + v0 + e0 * e0 - 2.0 * (1.0 + e0) * psi + phi + psi * psi;
    m.e_beta2 = v0 + e0 * e0;
    m.e_alphabeta = -e0 - v0 - e0 * e0 + e0 * psi;
    return m;
}

MomentSummary summarize(const NipsoSpec& spec) {
    spec.validate();
    double psi = 0.0;
    double phi = 0.0;
    for (const auto& inf : spec.informers) {
        psi += inf.coeff.mean();
        phi += inf.coeff.variance();
    }
    return MomentSummary::from_aggregates(spec.theta0.mean(), spec.theta0.variance(), psi, phi);
}

Mat2 order1_matrix(const MomentSummary& m) {
    return Mat2{{{m.e_alpha, m.e_beta}, {1.0, 0.0}}};
}

Mat5 order2_matrix(const MomentSummary& m) {
    Mat5 b{};
    b[0][0] = m.e_alpha;
    b[0][1] = m.e_beta;
    b[1][0] = 1.0;
    b[2][2] = m.e_alpha2;
    b[2][3] = m.e_beta2;
    b[2][4] = 2.0 * m.e_alphabeta;
    b[3][2] = 1.0;
    b[4][2] = m.e_alpha;
    b[4][4] = m.e_beta;
    return b;
}

std::array<double, 3> cubic_root_moduli(double a, double b, double c) {
    if (!finite(a) || !finite(b) || !finite(c))
        throw std::invalid_argument("cubic_root_moduli: non-finite coefficient");

    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    const double r2 = r * r;
    const double q3 = q * q * q;

    std::array<double, 3> mod{};
    if (r2 < q3) {
        // Three real roots.
        const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
        const double s = -2.0 * std::sqrt(q);
        double roots[3] = {
            s * std::cos(theta / 3.0) - a / 3.0,
            s * std::cos((theta + 2.0 * kPi) / 3.0) - a / 3.0,
            s * std::cos((theta - 2.0 * kPi) / 3.0) - a / 3.0,
        };
        for (int i = 0; i < 3; ++i) mod[i] = std::abs(polish_cubic_root(a, b, c, roots[i]));
        return mod;
    }

    // One real root plus a conjugate pair (possibly degenerate).
    const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r2 - q3)), r);
    const double small = big != 0.0 ? q / big : 0.0;
    double real_root = polish_cubic_root(a, b, c, big + small - a / 3.0);
    const double re = -0.5 * (big + small) - a / 3.0;
    const double im = 0.5 * std::sqrt(3.0) * (big - small);
    mod[0] = std::abs(real_root);
    mod[1] = std::hypot(re, im);
    mod[2] = mod[1];
    return mod;
}

double spectral_radius(const Mat2& m) {
    for (const auto& row : m)
        for (double x : row)
            if (!finite(x)) throw std::invalid_argument("spectral_radius: non-finite entry");
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) return std::sqrt(det);  // |lambda|^2 = det for a conjugate pair
    const double s = std::sqrt(disc);
    return std::max(std::abs((tr + s) / 2.0), std::abs((tr - s) / 2.0));
}

double spectral_radius(const Mat5& m) {
    for (const auto& row : m)
        for (double x : row)
            if (!finite(x)) throw std::invalid_argument("spectral_radius: non-finite entry");
    // The order-2 matrix is block lower-triangular: a 2x2 block for the first
    // moments and a 3x3 block for the second moments, with no coupling back
    // from the second block into the first.
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 5; ++j)
            if (m[i][j] != 0.0)
                throw std::invalid_argument("spectral_radius: matrix is not block-structured");
    for (int i = 2; i < 5; ++i)
        for (int j = 0; j < 2; ++j)
            if (m[i][j] != 0.0)
                throw std::invalid_argument("spectral_radius: matrix is not block-structured");

    const Mat2 top{{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}};
    const double rho_top = spectral_radius(top);

    // Characteristic polynomial of the 3x3 block via trace / principal
    // minors / determinant: x^3 - tr x^2 + M x - det.
    const double c00 = m[2][2], c01 = m[2][3], c02 = m[2][4];
    const double c10 = m[3][2], c11 = m[3][3], c12 = m[3][4];
    const double c20 = m[4][2], c21 = m[4][3], c22 = m[4][4];
    const double tr = c00 + c11 + c22;
    const double minors = (c00 * c11 - c01 * c10) + (c00 * c22 - c02 * c20) +
                          (c11 * c22 - c12 * c21);
    const double det = c00 * (c11 * c22 - c12 * c21) - c01 * (c10 * c22 - c12 * c20) +
                       c02 * (c10 * c21 - c11 * c20);
    const auto moduli = cubic_root_moduli(-tr, minors, -det);
    return std::max(rho_top, *std::max_element(moduli.begin(), moduli.end()));
}

Verdict order1_stable(const MomentSummary& m) {
    const double e0 = m.e_theta0;
    const double psi = m.psi;
    const double margin =
        std::min({e0 + 1.0, 1.0 - e0, psi, 2.0 * (e0 + 1.0) - psi});
    return Verdict{margin > 0.0, margin};
}

Verdict order2_stable(const MomentSummary& m) {
    const double e0 = m.e_theta0;
    const double v0 = m.v_theta0;
    const double psi = m.psi;
    const double phi = m.phi;

    const double s_var = 1.0 - v0;
    if (s_var <= 0.0) return Verdict{false, s_var};

    const double ratio = e0 / std::sqrt(s_var);
    const double s_lo = ratio + 1.0;
    const double s_hi = 1.0 - ratio;
    if (s_lo <= 0.0 || s_hi <= 0.0) return Verdict{false, std::min(s_lo, s_hi)};

    if (psi <= 0.0) return Verdict{false, psi};

    // Inside |E[theta0]| < sqrt(1 - V[theta0]) the denominator below is
    // strictly positive, so the bound is well defined.
    const double denom = 1.0 - e0 + phi * (1.0 + e0) / (psi * psi);
    const double rhs = -2.0 * (e0 * e0 + v0 - 1.0) / denom;
    const double margin = std::min({s_var, s_lo, s_hi, psi, rhs - psi});
    return Verdict{margin > 0.0, margin};
}

bool necessary_conditions(const MomentSummary& m) {
    if (m.e_beta == 1.0) return false;
    const double d = 1.0 - m.e_alpha2 - m.e_beta2 -
                     2.0 * m.e_alphabeta * m.e_alpha / (1.0 - m.e_beta);
    return finite(d) && d > 0.0;
}

StabilityReport full_report(const MomentSummary& m) {
    StabilityReport rep;
    rep.moments = m;
    rep.psi = m.psi;
    rep.phi = m.phi;
    rep.rho_a = spectral_radius(order1_matrix(m));
    rep.rho_b = spectral_radius(order2_matrix(m));
    const Verdict v1 = order1_stable(m);
    const Verdict v2 = order2_stable(m);
    rep.order1 = v1.stable;
    rep.order2 = v2.stable;
    rep.order1_margin = v1.margin;
    rep.order2_margin = v2.margin;
    rep.necessary_ok = necessary_conditions(m);
    rep.marginal = std::abs(v1.margin) < kBoundaryBand || std::abs(v2.margin) < kBoundaryBand;
    return rep;
}

StabilityReport full_report(const NipsoSpec& spec) { return full_report(summarize(spec)); }

std::string StabilityReport::to_json() const {
    nlohmann::json j;
    j["order1"] = order1;
    j["order2"] = order2;
    j["necessary_ok"] = necessary_ok;
    j["marginal"] = marginal;
    j["rho_a"] = rho_a;
    j["rho_b"] = rho_b;
    j["order1_margin"] = order1_margin;
    j["order2_margin"] = order2_margin;
    j["psi"] = psi;
    j["phi"] = phi;
    j["moments"] = {
        {"e_theta0", moments.e_theta0}, {"v_theta0", moments.v_theta0},
        {"psi", moments.psi},           {"phi", moments.phi},
        {"e_alpha", moments.e_alpha},   {"e_beta", moments.e_beta},
        {"e_alpha2", moments.e_alpha2}, {"e_beta2", moments.e_beta2},
        {"e_alphabeta", moments.e_alphabeta},
    };
    return j.dump(2);
}

MomentSummary SweepConfig::summary() const {
    double psi = 0.0;
    double phi = 0.0;
    for (double m : informer_means) psi += m;
    for (double v : informer_variances) phi += v;
    return MomentSummary::from_aggregates(e_theta0, v_theta0, psi, phi);
}

SweepConfig random_stable_config(std::size_t informer_count, Rng& rng) {
    if (informer_count < 1) throw std::invalid_argument("random_stable_config: informer_count < 1");
    constexpr double kLog10Lo = -3.0;
    constexpr double kLog10Hi = 0.5;
    constexpr double kLn10 = 2.30258509299404568402;
    SweepConfig cfg;
    cfg.informer_means.resize(informer_count);
    cfg.informer_variances.resize(informer_count);
    for (;;) {
        cfg.e_theta0 = -1.0 + 2.0 * rng.uniform01();
        const double cap = 1.0 - cfg.e_theta0 * cfg.e_theta0;
        if (cap <= 0.0) continue;
        cfg.v_theta0 = rng.uniform01() * cap;
        for (std::size_t i = 0; i < informer_count; ++i) {
            cfg.informer_means[i] =
                std::exp(kLn10 * (kLog10Lo + (kLog10Hi - kLog10Lo) * rng.uniform01()));
            cfg.informer_variances[i] =
                std::exp(kLn10 * (kLog10Lo + (kLog10Hi - kLog10Lo) * rng.uniform01()));
        }
        if (order2_stable(cfg.summary()).stable) return cfg;
    }
}

SweepResult sufficiency_sweep(std::size_t informer_count, std::size_t samples,
                              std::uint64_t seed) {
    if (informer_count < 1) throw std::invalid_argument("sufficiency_sweep: informer_count < 1");
    if (samples < 1) throw std::invalid_argument("sufficiency_sweep: samples < 1");

    constexpr std::size_t kBlocks = 64;
    constexpr std::size_t kMaxCounterexamples = 16;
    const std::size_t n_blocks = std::min(kBlocks, samples);

    struct BlockOut {
        std::size_t checked = 0;
        std::size_t stable = 0;
        std::vector<SweepConfig> bad;
    };
    std::vector<BlockOut> out(n_blocks);

    parallel_blocks(n_blocks, [&](std::size_t block) {
        const std::size_t per = samples / n_blocks;
        const std::size_t extra = samples % n_blocks;
        const std::size_t count = per + (block < extra ? 1 : 0);
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(informer_count),
                              static_cast<std::uint64_t>(block));
        BlockOut& slot = out[block];
        for (std::size_t i = 0; i < count; ++i) {
            const SweepConfig cfg = random_stable_config(informer_count, rng);
            const double rho = spectral_radius(order2_matrix(cfg.summary()));
            ++slot.checked;
            if (rho < 1.0) {
                ++slot.stable;
            } else if (slot.bad.size() < kMaxCounterexamples) {
                slot.bad.push_back(cfg);
            }
        }
    });

    SweepResult res;
    res.informer_count = informer_count;
    for (const auto& slot : out) {
        res.samples += slot.checked;
        res.rho_b_below_one += slot.stable;
        for (const auto& cfg : slot.bad)
            if (res.counterexamples.size() < kMaxCounterexamples) res.counterexamples.push_back(cfg);
    }
    return res;
}

}  // namespace nipso
