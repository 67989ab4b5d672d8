#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phase_toolkit/counterexample.hpp"
#include "phase_toolkit/criteria.hpp"
#include "phase_toolkit/enumeration.hpp"
#include "phase_toolkit/signal.hpp"
#include "phase_toolkit/spectral.hpp"

// JSON and CSV encodings. Complex numbers are [re, im] arrays; doubles are
// written in shortest round-trip form. Readers throw InvalidArgument on
// malformed documents.
namespace phase_toolkit::io {

using Json = nlohmann::json;

[[nodiscard]] Json to_json(const Signal& x);
[[nodiscard]] Json to_json(const Autocorrelation& a);
[[nodiscard]] Json to_json(const ZeroPairSet& pairs);
[[nodiscard]] Json to_json(const SolutionSet& set);
[[nodiscard]] Json to_json(const Constraint& c);
[[nodiscard]] Json to_json(const CriterionReport& report);
[[nodiscard]] Json to_json(const CounterexamplePair& pair);

[[nodiscard]] Signal signal_from_json(const Json& j, const ToleranceConfig& cfg = {});
[[nodiscard]] Autocorrelation autocorrelation_from_json(const Json& j, const ToleranceConfig& cfg = {});
/// {"n": N, "samples": [[omega, intensity], ...]}
[[nodiscard]] Autocorrelation intensity_from_json(const Json& j, const ToleranceConfig& cfg = {});
[[nodiscard]] std::vector<Constraint> constraints_from_json(const Json& j);
/// Signals of every class, in order.
[[nodiscard]] std::vector<Signal> solution_signals_from_json(const Json& j);

/// Accepts a Signal, Autocorrelation or intensity-sample document and
/// returns the autocorrelation it determines.
[[nodiscard]] Autocorrelation spectrum_from_json(const Json& j, const ToleranceConfig& cfg = {});

/// Parses text, mapping syntax errors to InvalidArgument.
[[nodiscard]] Json parse(const std::string& text);

/// One "re,im" line per sample.
void write_csv(std::ostream& os, const Signal& x);
/// Classes separated by a blank line.
void write_csv(std::ostream& os, const SolutionSet& set);

}  // namespace phase_toolkit::io
