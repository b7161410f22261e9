#include "nipso/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nipso {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
    }
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
    try {
        // stoull wraps negative input instead of failing
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad seed for " + key + ": '" + value + "'");
    }
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
    }
    return kv;
}

std::map<std::string, std::string> load_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    try {
        return parse_key_values(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

NipsoSpec spec_from_config(const std::map<std::string, std::string>& kv) {
    const auto theta0 = kv.find("theta0");
    if (theta0 == kv.end()) throw std::invalid_argument("config: missing theta0");
    NipsoSpec spec{parse_distribution(theta0->second), {}};

    for (std::size_t i = 1;; ++i) {
        const std::string prefix = "informer" + std::to_string(i);
        const auto coeff = kv.find(prefix + ".coeff");
        const auto process = kv.find(prefix + ".process");
        if (coeff == kv.end() && process == kv.end()) break;
        if (coeff == kv.end())
            throw std::invalid_argument("config: missing " + prefix + ".coeff");
        if (process == kv.end())
            throw std::invalid_argument("config: missing " + prefix + ".process");
        spec.informers.push_back(
            {parse_distribution(coeff->second), parse_informer(process->second)});
    }
    if (spec.informers.empty())
        throw std::invalid_argument("config: at least informer1.coeff/.process required");

    // Informer keys beyond the contiguous range indicate numbering gaps.
    for (const auto& [key, value] : kv) {
        (void)value;
        if (key.rfind("informer", 0) != 0) continue;
        const auto dot = key.find('.');
        if (dot == std::string::npos)
            throw std::invalid_argument("config: malformed informer key '" + key + "'");
        const std::string idx = key.substr(8, dot - 8);
        const std::string field = key.substr(dot + 1);
        if (field != "coeff" && field != "process")
            throw std::invalid_argument("config: unknown informer field '" + key + "'");
        std::size_t n = 0;
        try {
            n = static_cast<std::size_t>(std::stoull(idx));
        } catch (const std::exception&) {
            throw std::invalid_argument("config: malformed informer key '" + key + "'");
        }
        if (n < 1 || n > spec.informers.size())
            throw std::invalid_argument("config: informer indices must be contiguous from 1 ('" +
                                        key + "')");
    }

    spec.validate();
    return spec;
}

InitRange parse_init_range(const std::string& text) {
    const std::string s = trim(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return InitRange{v, v};
    } catch (const std::exception&) {
        // fall through to the literal forms
    }
    const CoefficientDistribution d = parse_distribution(s);
    switch (d.kind()) {
        case CoefficientDistribution::Kind::Constant:
            return InitRange{d.params()[0], d.params()[0]};
        case CoefficientDistribution::Kind::Uniform:
            return InitRange{d.params()[0], d.params()[1]};
        default:
            throw std::invalid_argument("init range must be a number, const(v), or unif(lo,hi): '" +
                                        text + "'");
    }
}

RecurrenceRun run_from_config(const std::map<std::string, std::string>& kv) {
    RecurrenceRun run;
    run.spec = spec_from_config(kv);
    for (const auto& [key, value] : kv) {
        if (key == "theta0" || key.rfind("informer", 0) == 0) continue;
        if (key == "steps") {
            run.steps = to_int(key, value);
        } else if (key == "runs") {
            run.runs = to_int(key, value);
        } else if (key == "seed") {
            run.seed = to_uint(key, value);
        } else if (key == "init_position") {
            run.initial_position = parse_init_range(value);
        } else if (key == "init_velocity") {
            run.initial_velocity = parse_init_range(value);
        } else if (key == "form") {
            if (value == "second-order")
                run.form = RecurrenceRun::Form::SecondOrder;
            else if (value == "velocity")
                run.form = RecurrenceRun::Form::Velocity;
            else
                throw std::invalid_argument("config: form must be second-order or velocity, got '" +
                                            value + "'");
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return run;
}

}  // namespace nipso
