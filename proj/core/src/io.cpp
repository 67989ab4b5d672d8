#include "phase_toolkit/io.hpp"

#include <cstdio>
#include <ostream>

namespace phase_toolkit::io {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidArgument("expected a number or a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexVector complex_list(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
        throw InvalidArgument(std::string("missing array \"") + key + "\"");
    }
    ComplexVector out;
    for (const auto& v : j.at(key)) out.push_back(complex_from(v));
    return out;
}

long integer_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw InvalidArgument(std::string("missing integer \"") + key + "\"");
    }
    return j.at(key).get<long>();
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Json to_json(const Signal& x) {
    Json values = Json::array();
    for (const auto& v : x.values()) values.push_back(complex_json(v));
    return {{"offset", x.offset()}, {"values", std::move(values)}};
}

Json to_json(const Autocorrelation& a) {
    Json coeffs = Json::array();
    for (const auto& v : a.coeffs()) coeffs.push_back(complex_json(v));
    return {{"n", a.support_length()}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const ZeroPairSet& pairs) {
    Json list = Json::array();
    for (const auto& p : pairs.pairs) {
        list.push_back({{"gamma", complex_json(p.gamma)}, {"on_circle", p.on_circle}, {"mult", p.multiplicity}});
    }
    return {{"leading", complex_json(pairs.leading)}, {"pairs", std::move(list)}, {"snapped", pairs.snapped}};
}

Json to_json(const SolutionSet& set) {
    Json classes = Json::array();
    for (const auto& cls : set.classes) {
        classes.push_back({{"mask", cls.selection.reflections}, {"signal", to_json(cls.signal())}});
    }
    return {{"classes", std::move(classes)},
            {"total_enumerated", set.total_enumerated},
            {"modulo_reflection", set.modulo_reflection},
            {"collisions", set.collisions}};
}

Json to_json(const Constraint& c) {
    return {{"kind", c.kind == Constraint::Kind::magnitude ? "magnitude" : "phase"},
            {"index", c.index},
            {"value", c.value}};
}

Json to_json(const CriterionReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"mask", mask_indices(v.mask)}, {"residual", v.residual}});
    }
    Json j = {{"unique", report.unique},
              {"equivalence", report.equivalence == Equivalence::rotation ? "rotation" : "rotation_reflection"},
              {"violations", std::move(violations)},
              {"borderline", report.borderline}};
    if (report.oracle_unique) j["oracle_unique"] = *report.oracle_unique;
    return j;
}

Json to_json(const CounterexamplePair& pair) {
    return {{"x", to_json(pair.x)},
            {"y", to_json(pair.y)},
            {"shared",
             {{"intensity", pair.shared.intensity}, {"moduli", pair.shared.moduli}, {"phases", pair.shared.phases}}}};
}

Signal signal_from_json(const Json& j, const ToleranceConfig& cfg) {
    const long offset = j.is_object() && j.contains("offset") ? integer_field(j, "offset") : 0;
    return Signal(complex_list(j, "values"), offset, cfg.trim_rel);
}

Autocorrelation autocorrelation_from_json(const Json& j, const ToleranceConfig& cfg) {
    ComplexVector coeffs = complex_list(j, "coeffs");
    if (j.contains("n") && 2 * integer_field(j, "n") - 1 != static_cast<long>(coeffs.size())) {
        throw InvalidArgument("\"coeffs\" must hold 2n-1 entries");
    }
    return Autocorrelation::from_coefficients(std::move(coeffs), cfg);
}

Autocorrelation intensity_from_json(const Json& j, const ToleranceConfig& cfg) {
    const long n = integer_field(j, "n");
    if (n < 1) throw InvalidArgument("\"n\" must be positive");
    if (!j.contains("samples") || !j.at("samples").is_array()) throw InvalidArgument("missing array \"samples\"");
    std::vector<IntensitySample> samples;
    for (const auto& s : j.at("samples")) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
            throw InvalidArgument("expected an intensity sample [omega, value]");
        }
        samples.push_back({s[0].get<double>(), s[1].get<double>()});
    }
    return acf_from_intensity_samples(samples, static_cast<std::size_t>(n), cfg);
}

std::vector<Constraint> constraints_from_json(const Json& j) {
    const Json& list = j.is_object() && j.contains("constraints") ? j.at("constraints") : j;
    if (!list.is_array()) throw InvalidArgument("expected a list of constraints");
    std::vector<Constraint> out;
    for (const auto& c : list) {
        if (!c.is_object() || !c.contains("kind") || !c.at("kind").is_string()) {
            throw InvalidArgument("constraint needs a \"kind\"");
        }
        const long index = integer_field(c, "index");
        if (index < 0) throw InvalidArgument("constraint index must be nonnegative");
        if (!c.contains("value") || !c.at("value").is_number()) throw InvalidArgument("constraint needs a \"value\"");
        const auto kind = c.at("kind").get<std::string>();
        const auto value = c.at("value").get<double>();
        if (kind == "magnitude") {
            out.push_back(Constraint::magnitude(static_cast<std::size_t>(index), value));
        } else if (kind == "phase") {
            out.push_back(Constraint::phase(static_cast<std::size_t>(index), value));
        } else {
            throw InvalidArgument("constraint kind must be \"magnitude\" or \"phase\"");
        }
    }
    return out;
}

std::vector<Signal> solution_signals_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("classes") || !j.at("classes").is_array()) {
        throw InvalidArgument("missing array \"classes\"");
    }
    std::vector<Signal> out;
    for (const auto& cls : j.at("classes")) {
        if (!cls.is_object() || !cls.contains("signal")) throw InvalidArgument("class needs a \"signal\"");
        out.push_back(signal_from_json(cls.at("signal")));
    }
    return out;
}

Autocorrelation spectrum_from_json(const Json& j, const ToleranceConfig& cfg) {
    if (!j.is_object()) throw InvalidArgument("expected a JSON object");
    if (j.contains("values")) return autocorrelation(signal_from_json(j, cfg));
    if (j.contains("coeffs")) return autocorrelation_from_json(j, cfg);
    if (j.contains("samples")) return intensity_from_json(j, cfg);
    throw InvalidArgument("expected a signal, autocorrelation or intensity document");
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

void write_csv(std::ostream& os, const Signal& x) {
    for (const auto& v : x.values()) os << csv_number(v.real()) << ',' << csv_number(v.imag()) << '\n';
}

void write_csv(std::ostream& os, const SolutionSet& set) {
    for (std::size_t k = 0; k < set.classes.size(); ++k) {
        if (k > 0) os << '\n';
        write_csv(os, set.classes[k].signal());
    }
}

}  // namespace phase_toolkit::io
