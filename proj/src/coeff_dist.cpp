#include "nipso/coeff_dist.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace nipso {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

CoefficientDistribution::CoefficientDistribution(Kind kind, std::vector<double> params,
                                                 std::function<double(Rng&)> sampler)
    : kind_(kind), params_(std::move(params)), sampler_(std::move(sampler)) {}

CoefficientDistribution CoefficientDistribution::constant(double c) {
    return {Kind::Constant, {c}};
}

CoefficientDistribution CoefficientDistribution::uniform(double lo, double hi) {
    if (hi < lo) throw std::invalid_argument("uniform: hi < lo");
    return {Kind::Uniform, {lo, hi}};
}

CoefficientDistribution CoefficientDistribution::scaled_uniform(double c) {
    return {Kind::ScaledUniform, {c}};
}

CoefficientDistribution CoefficientDistribution::affine_mixture(double a, double b) {
    return {Kind::AffineMixture, {a, b}};
}

CoefficientDistribution CoefficientDistribution::gaussian(double mean, double variance) {
    if (variance < 0.0) throw std::invalid_argument("gaussian: variance < 0");
    return {Kind::Gaussian, {mean, variance}};
}

CoefficientDistribution CoefficientDistribution::custom(double mean, double variance,
                                                        std::function<double(Rng&)> sampler) {
    if (variance < 0.0) throw std::invalid_argument("custom: variance < 0");
    return {Kind::Custom, {mean, variance}, std::move(sampler)};
}

double CoefficientDistribution::mean() const {
    switch (kind_) {
        case Kind::Constant: return params_[0];
        case Kind::Uniform: return 0.5 * (params_[0] + params_[1]);
        case Kind::ScaledUniform: return 0.5 * params_[0];
        case Kind::AffineMixture: return 0.5 * (params_[0] + params_[1]);
        case Kind::Gaussian: return params_[0];
        case Kind::Custom: return params_[0];
    }
    throw std::logic_error("unreachable");
}

double CoefficientDistribution::variance() const {
    switch (kind_) {
        case Kind::Constant: return 0.0;
        case Kind::Uniform: {
            const double w = params_[1] - params_[0];
            return w * w / 12.0;
        }
        case Kind::ScaledUniform: return params_[0] * params_[0] / 12.0;
        case Kind::AffineMixture:
            return (params_[0] * params_[0] + params_[1] * params_[1]) / 12.0;
        case Kind::Gaussian: return params_[1];
        case Kind::Custom: return params_[1];
    }
    throw std::logic_error("unreachable");
}

double CoefficientDistribution::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::Constant: return params_[0];
        case Kind::Uniform: return rng.uniform(params_[0], params_[1]);
        case Kind::ScaledUniform: return params_[0] * rng.uniform01();
        case Kind::AffineMixture:
            return params_[0] * rng.uniform01() + params_[1] * rng.uniform01();
        case Kind::Gaussian: return rng.gaussian(params_[0], std::sqrt(params_[1]));
        case Kind::Custom:
            if (sampler_) return sampler_(rng);
            return rng.gaussian(params_[0], std::sqrt(params_[1]));
    }
    throw std::logic_error("unreachable");
}

std::string CoefficientDistribution::to_string() const {
    switch (kind_) {
        case Kind::Constant: return "const(" + fmt(params_[0]) + ")";
        case Kind::Uniform: return "unif(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case Kind::ScaledUniform: return "scaledunif(" + fmt(params_[0]) + ")";
        case Kind::AffineMixture: {
            // report as mix(u, c) when the blend weights are recoverable
            const double c = params_[0] + params_[1];
            if (c != 0.0) {
                return "mix(" + fmt(params_[0] / c) + "," + fmt(c) + ")";
            }
            return "mix(0,0)";
        }
        case Kind::Gaussian: return "gauss(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
        case Kind::Custom:
            return "custom(mean=" + fmt(params_[0]) + ",var=" + fmt(params_[1]) + ")";
    }
    throw std::logic_error("unreachable");
}

InformerProcess::InformerProcess(double limit_mean, double limit_variance,
                                 std::function<double(std::int64_t, Rng&)> generator,
                                 std::string repr)
    : limit_mean_(limit_mean),
      limit_variance_(limit_variance),
      generator_(std::move(generator)),
      repr_(std::move(repr)) {
    if (limit_variance_ < 0.0) throw std::invalid_argument("informer: limit variance < 0");
}

InformerProcess InformerProcess::constant(double position) {
    return {position, 0.0,
            [position](std::int64_t, Rng&) { return position; },
            "const(" + fmt(position) + ")"};
}

InformerProcess InformerProcess::gaussian(double limit_mean, double limit_variance) {
    const double sd = std::sqrt(limit_variance);
    return {limit_mean, limit_variance,
            [limit_mean, sd](std::int64_t, Rng& rng) { return rng.gaussian(limit_mean, sd); },
            "gauss(" + fmt(limit_mean) + "," + fmt(limit_variance) + ")"};
}

InformerProcess InformerProcess::decaying(double limit_mean, double limit_variance,
                                          double amplitude, double rate) {
    if (std::abs(rate) >= 1.0)
        throw std::invalid_argument("decaying informer: |rate| must be < 1");
    const double sd = std::sqrt(limit_variance);
    return {limit_mean, limit_variance,
            [limit_mean, sd, amplitude, rate](std::int64_t t, Rng& rng) {
                const double mean_t = limit_mean + amplitude * std::pow(rate, double(t));
                return sd > 0.0 ? rng.gaussian(mean_t, sd) : mean_t;
            },
            "decay(" + fmt(limit_mean) + "," + fmt(limit_variance) + "," + fmt(amplitude) +
                "," + fmt(rate) + ")"};
}

double InformerProcess::sample(std::int64_t t, Rng& rng) const {
    return generator_(t, rng);
}

std::string InformerProcess::to_string() const { return repr_; }

void NipsoSpec::validate() const {
    if (informers.empty())
        throw std::invalid_argument("NipsoSpec: at least one informer required");
    auto check = [](const CoefficientDistribution& d) {
        if (!all_finite(d.params()) || !std::isfinite(d.mean()) || !std::isfinite(d.variance()))
            throw std::invalid_argument("NipsoSpec: non-finite distribution parameters");
        if (d.variance() < 0.0)
            throw std::invalid_argument("NipsoSpec: negative variance");
    };
    check(theta0);
    for (const auto& inf : informers) {
        check(inf.coeff);
        if (!std::isfinite(inf.process.limit_mean()) ||
            !std::isfinite(inf.process.limit_variance()))
            throw std::invalid_argument("NipsoSpec: non-finite informer limits");
    }
}

namespace {

// Shared literal scanner: name(arg, arg, ...) with optional key= prefixes.
struct Literal {
    std::string name;
    std::vector<std::pair<std::string, double>> args;  // key may be empty
};

Literal scan_literal(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

    const auto open = s.find('(');
    if (open == std::string::npos || s.empty() || s.back() != ')')
        throw std::invalid_argument("malformed literal: '" + text + "'");

    Literal lit;
    lit.name = s.substr(0, open);
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    if (body.empty()) return lit;

    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        std::string field = body.substr(pos, comma - pos);
        std::string key;
        if (auto eq = field.find('='); eq != std::string::npos) {
            key = field.substr(0, eq);
            field = field.substr(eq + 1);
        }
        try {
            std::size_t used = 0;
            const double value = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
            lit.args.emplace_back(key, value);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed number '" + field + "' in '" + text + "'");
        }
        pos = comma + 1;
    }
    return lit;
}

double positional(const Literal& lit, std::size_t i) {
    if (i >= lit.args.size() || !lit.args[i].first.empty())
        throw std::invalid_argument("literal " + lit.name + ": expected positional argument");
    return lit.args[i].second;
}

void expect_arity(const Literal& lit, std::size_t n, const std::string& text) {
    if (lit.args.size() != n)
        throw std::invalid_argument("literal '" + text + "': expected " + std::to_string(n) +
                                    " arguments");
}

}  // namespace

CoefficientDistribution parse_distribution(const std::string& text) {
    const Literal lit = scan_literal(text);
    if (lit.name == "const") {
        expect_arity(lit, 1, text);
        return CoefficientDistribution::constant(positional(lit, 0));
    }
    if (lit.name == "unif") {
        expect_arity(lit, 2, text);
        return CoefficientDistribution::uniform(positional(lit, 0), positional(lit, 1));
    }
    if (lit.name == "scaledunif") {
        expect_arity(lit, 1, text);
        return CoefficientDistribution::scaled_uniform(positional(lit, 0));
    }
    if (lit.name == "mix") {
        expect_arity(lit, 2, text);
        const double u = positional(lit, 0);
        const double c = positional(lit, 1);
        return CoefficientDistribution::affine_mixture(u * c, (1.0 - u) * c);
    }
    if (lit.name == "gauss") {
        expect_arity(lit, 2, text);
        return CoefficientDistribution::gaussian(positional(lit, 0), positional(lit, 1));
    }
    if (lit.name == "custom") {
        expect_arity(lit, 2, text);
        double mean = 0.0, var = 0.0;
        bool have_mean = false, have_var = false;
        for (const auto& [key, value] : lit.args) {
            if (key == "mean") { mean = value; have_mean = true; }
            else if (key == "var") { var = value; have_var = true; }
            else throw std::invalid_argument("custom: unknown key '" + key + "'");
        }
        if (!have_mean || !have_var)
            throw std::invalid_argument("custom: both mean= and var= required");
        return CoefficientDistribution::custom(mean, var);
    }
    throw std::invalid_argument("unknown distribution '" + lit.name + "'");
}

InformerProcess parse_informer(const std::string& text) {
    const Literal lit = scan_literal(text);
    if (lit.name == "const") {
        expect_arity(lit, 1, text);
        return InformerProcess::constant(positional(lit, 0));
    }
    if (lit.name == "gauss") {
        expect_arity(lit, 2, text);
        return InformerProcess::gaussian(positional(lit, 0), positional(lit, 1));
    }
    if (lit.name == "decay") {
        expect_arity(lit, 4, text);
        return InformerProcess::decaying(positional(lit, 0), positional(lit, 1),
                                         positional(lit, 2), positional(lit, 3));
    }
    throw std::invalid_argument("unknown informer process '" + lit.name + "'");
}

}  // namespace nipso
