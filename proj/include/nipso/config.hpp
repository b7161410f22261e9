#ifndef NIPSO_CONFIG_HPP
#define NIPSO_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "nipso/coeff_dist.hpp"
#include "nipso/simulation.hpp"

namespace nipso {

/// Flat key=value config: one pair per line, '#' starts a comment, blank
/// lines ignored, whitespace around keys/values trimmed. Duplicate keys are
/// an error.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// parse_key_values over a file; failures carry the path in the message.
std::map<std::string, std::string> load_key_values(const std::string& path);

/// Model section of a config:
///   theta0 = const(0.7)
///   informer1.coeff = scaledunif(1.4)
///   informer1.process = const(0)
///   informer2.coeff = scaledunif(1.4)
///   informer2.process = const(1)
/// Informer indices start at 1 and must be contiguous; every informer needs
/// both .coeff and .process. Keys outside theta0/informerN.* are ignored
/// here (run settings share the file).
NipsoSpec spec_from_config(const std::map<std::string, std::string>& kv);

/// Full simulate config: the model section plus optional run settings
///   steps = 5000        (default 1000)
///   runs = 10000        (default 1)
///   seed = 42           (default 0)
///   init_position = unif(-5,5)   (default; also accepts a bare number or const(v))
///   init_velocity = 0            (default 0)
///   form = second-order | velocity  (default second-order)
/// Unknown keys are an error.
RecurrenceRun run_from_config(const std::map<std::string, std::string>& kv);

/// A bare number, const(v), or unif(lo,hi).
InitRange parse_init_range(const std::string& text);

}  // namespace nipso

#endif  // NIPSO_CONFIG_HPP
