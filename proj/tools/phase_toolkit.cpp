// Command-line front end: analyze, enumerate, recover, counterexample.
//
// Exit codes: 0 success (or a unique recovery), 1 numerical failure,
// 2 bad input or arguments, 3 no consistent class, 4 several classes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phase_toolkit/counterexample.hpp"
#include "phase_toolkit/criteria.hpp"
#include "phase_toolkit/enumeration.hpp"
#include "phase_toolkit/io.hpp"
#include "phase_toolkit/spectral.hpp"

namespace pt = phase_toolkit;
using pt::io::Json;

namespace {

enum Exit : int { ok = 0, failure = 1, bad_input = 2, inconsistent = 3, ambiguous = 4 };

struct Options {
    std::optional<double> atol;
    std::optional<double> rtol;
    std::optional<double> circle_tol;
    std::optional<double> criterion_tol;
    bool modulo_reflection = false;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::string out;
};

pt::ToleranceConfig tolerances(const Options& o) {
    pt::ToleranceConfig cfg;
    if (o.atol) {
        cfg.atol = *o.atol;
    } else if (const char* env = std::getenv("PHASE_TOOLKIT_TOL_ABS")) {
        char* end = nullptr;
        cfg.atol = std::strtod(env, &end);
        if (end == env || *end != '\0') throw pt::InvalidArgument("PHASE_TOOLKIT_TOL_ABS is not a number");
    }
    if (o.rtol) cfg.rtol = *o.rtol;
    if (o.circle_tol) cfg.circle_tol = *o.circle_tol;
    if (o.criterion_tol) cfg.criterion_tol = *o.criterion_tol;
    cfg.validate();
    return cfg;
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pt::InvalidArgument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json read_json(const std::string& path) { return pt::io::parse(read_input(path)); }

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw pt::InvalidArgument("cannot write " + o.out);
    file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_solutions(const Options& o, const pt::SolutionSet& set) {
    if (o.format == "csv") {
        std::ostringstream os;
        pt::io::write_csv(os, set);
        return os.str();
    }
    return dump(pt::io::to_json(set));
}

std::string format_pair(const Options& o, const pt::CounterexamplePair& pair) {
    if (o.format == "csv") {
        std::ostringstream os;
        pt::io::write_csv(os, pair.x);
        os << '\n';
        pt::io::write_csv(os, pair.y);
        return os.str();
    }
    return dump(pt::io::to_json(pair));
}

void report_pair(const pt::CounterexamplePair& pair, const pt::ToleranceConfig& cfg) {
    const pt::PairCheck c = pt::check_pair(pair, 128, cfg);
    std::fprintf(stderr, "intensity: max deviation %.3e (relative to a[0])\n", c.intensity_error);
    if (pair.shared.moduli) std::fprintf(stderr, "moduli: max deviation %.3e (relative)\n", c.moduli_error);
    if (pair.shared.phases) std::fprintf(stderr, "phases: max off-axis deviation %.3e (relative)\n", c.phase_error);
    std::fprintf(stderr, "distance modulo trivial ambiguities: %.6g\n", c.class_distance);
}

const char* equivalence_name(pt::Equivalence e) {
    return e == pt::Equivalence::rotation ? "rotation" : "rotation_and_reflection";
}

Json verdict(const char* name, std::vector<int> ells, const pt::CriterionReport& r) {
    Json j = {{"criterion", name},
              {"ell", std::move(ells)},
              {"unique", r.unique},
              {"equivalence", equivalence_name(r.equivalence)},
              {"borderline", r.borderline}};
    if (r.oracle_unique) j["oracle_unique"] = *r.oracle_unique;
    return j;
}

int cmd_analyze(const Options& o, const std::string& path) {
    const pt::ToleranceConfig cfg = tolerances(o);
    const pt::Signal x = pt::io::signal_from_json(read_json(path), cfg);
    const pt::Autocorrelation a = pt::autocorrelation(x);
    const pt::ZeroPairSet pairs = pt::factorize(a, cfg);
    const std::size_t classes = pt::enumerate_solutions(pairs, false, cfg).classes.size();
    const std::size_t classes_mod = pt::enumerate_solutions(pairs, true, cfg).classes.size();

    pt::ComplexVector zeros;
    for (const auto& r : pt::find_roots(x.values(), cfg)) zeros.insert(zeros.end(), r.multiplicity, r.value);
    const int n = static_cast<int>(x.size());

    Json criteria = Json::array();
    if (n >= 2) {
        for (int ell = 0; ell < n; ++ell) {
            criteria.push_back(verdict("magnitude", {ell}, pt::check_magnitude_uniqueness(zeros, ell, cfg)));
        }
        criteria.push_back(verdict("all_moduli", {}, pt::check_all_moduli_uniqueness(zeros, cfg)));
        for (int ell = 1; ell <= n - 2; ++ell) {
            criteria.push_back(verdict("endpoint_phase", {ell}, pt::check_phase_uniqueness_endpoint(zeros, ell, cfg)));
        }
        for (int l1 = 1; l1 <= n - 2; ++l1) {
            for (int l2 = l1 + 1; l2 <= n - 2; ++l2) {
                criteria.push_back(
                    verdict("two_phases", {l1, l2}, pt::check_phase_uniqueness_two_points(zeros, l1, l2, cfg)));
            }
        }
    }

    if (o.format == "csv") {
        std::ostringstream os;
        os << "criterion,ell,unique,borderline\n";
        for (const auto& c : criteria) {
            std::string ells;
            for (const auto& e : c.at("ell")) ells += (ells.empty() ? "" : " ") + std::to_string(e.get<int>());
            os << c.at("criterion").get<std::string>() << ',' << ells << ',' << c.at("unique").get<bool>() << ','
               << c.at("borderline").get<bool>() << '\n';
        }
        emit(o, os.str());
        return ok;
    }
    const Json report = {{"n", n},
                         {"autocorrelation", pt::io::to_json(a)},
                         {"zero_pairs", pt::io::to_json(pairs)},
                         {"classes", classes},
                         {"classes_modulo_reflection", classes_mod},
                         {"criteria", std::move(criteria)}};
    emit(o, dump(report));
    return ok;
}

int cmd_enumerate(const Options& o, const std::string& path) {
    const pt::ToleranceConfig cfg = tolerances(o);
    const pt::Autocorrelation a = pt::io::spectrum_from_json(read_json(path), cfg);
    emit(o, format_solutions(o, pt::recover(a, {}, cfg, o.modulo_reflection)));
    return ok;
}

int cmd_recover(const Options& o, const std::string& spectrum_path, const std::string& constraints_path) {
    if (spectrum_path == "-" && constraints_path == "-") throw pt::InvalidArgument("only one input may be stdin");
    const pt::ToleranceConfig cfg = tolerances(o);
    const pt::Autocorrelation a = pt::io::spectrum_from_json(read_json(spectrum_path), cfg);
    const std::vector<pt::Constraint> constraints = pt::io::constraints_from_json(read_json(constraints_path));
    const pt::SolutionSet set = pt::recover(a, constraints, cfg, o.modulo_reflection);
    emit(o, format_solutions(o, set));
    if (set.classes.empty()) return inconsistent;
    return set.classes.size() == 1 ? ok : ambiguous;
}

int cmd_modulus(const Options& o, int n, double eta1, double eta2) {
    const pt::ToleranceConfig cfg = tolerances(o);
    const pt::CounterexamplePair pair = pt::magnitude_counterexample(n, eta1, eta2);
    emit(o, format_pair(o, pair));
    report_pair(pair, cfg);
    return ok;
}

std::vector<double> parse_zeros(const std::string& text) {
    std::vector<double> zeros;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
            throw pt::InvalidArgument("cannot read zero \"" + item + "\"");
        }
        zeros.push_back(v);
    }
    return zeros;
}

// N-1 zeros in [-4, -1/4], kept away from -1 so that every one is off the circle.
std::vector<double> random_negative_zeros(int n, std::uint64_t seed) {
    if (n < 3) throw pt::InvalidArgument("need N >= 3 for a nontrivial phase ambiguity");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_modulus(std::log(0.25), std::log(4.0));
    std::vector<double> zeros;
    while (zeros.size() + 1 < static_cast<std::size_t>(n)) {
        const double r = std::exp(log_modulus(rng));
        if (std::abs(r - 1.0) >= 0.1) zeros.push_back(-r);
    }
    return zeros;
}

int cmd_phase(const Options& o, const std::string& zeros_text, std::optional<int> n, bool all) {
    const pt::ToleranceConfig cfg = tolerances(o);
    if (zeros_text.empty() == !n) throw pt::InvalidArgument("give exactly one of --zeros and --n");
    const std::vector<double> zeros = n ? random_negative_zeros(*n, o.seed) : parse_zeros(zeros_text);
    const std::vector<pt::CounterexamplePair> pairs = pt::phase_counterexample(zeros, cfg);
    if (pairs.empty()) throw pt::InvalidArgument("no nontrivial ambiguity exists for these zeros");
    if (all) {
        if (o.format == "csv") throw pt::InvalidArgument("--all needs JSON output");
        Json list = Json::array();
        for (const auto& p : pairs) list.push_back(pt::io::to_json(p));
        emit(o, dump(list));
    } else {
        emit(o, format_pair(o, pairs.front()));
    }
    for (std::size_t i = 0; i < (all ? pairs.size() : 1); ++i) {
        if (all) std::fprintf(stderr, "pair %zu\n", i + 1);
        report_pair(pairs[i], cfg);
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ambiguity analysis for one-dimensional phase retrieval"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    const auto positive = CLI::PositiveNumber;
    app.add_option("--tol-abs", o.atol, "absolute tolerance (env PHASE_TOOLKIT_TOL_ABS)")->check(positive);
    app.add_option("--tol-rel", o.rtol, "relative tolerance")->check(positive);
    app.add_option("--circle-tol", o.circle_tol, "unit-circle snapping tolerance")->check(positive);
    app.add_option("--criterion-tol", o.criterion_tol, "uniqueness criterion tolerance")->check(positive);
    app.add_flag("--modulo-reflection", o.modulo_reflection, "identify conjugate reflections");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", o.seed, "seed for generated inputs");
    app.add_option("--out", o.out, "output file (default stdout)");

    std::string input;
    std::string constraints;
    int code = ok;

    auto* analyze = app.add_subcommand("analyze", "zero pairs, class count and every uniqueness verdict of a signal");
    analyze->add_option("signal", input, "signal JSON, '-' for stdin")->required();
    analyze->callback([&] { code = cmd_analyze(o, input); });

    auto* enumerate = app.add_subcommand("enumerate", "every signal sharing the intensity of the input");
    enumerate->add_option("input", input, "signal, autocorrelation or intensity JSON, '-' for stdin")->required();
    enumerate->callback([&] { code = cmd_enumerate(o, input); });

    auto* recover = app.add_subcommand("recover", "classes consistent with the intensity and time-domain constraints");
    recover->add_option("intensity", input, "signal, autocorrelation or intensity JSON")->required();
    recover->add_option("constraints", constraints, "constraint list JSON")->required();
    recover->callback([&] { code = cmd_recover(o, input, constraints); });

    auto* counter = app.add_subcommand("counterexample", "explicit non-unique pairs");
    counter->require_subcommand(1);
    counter->fallthrough();
    int n = 0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    auto* modulus = counter->add_subcommand("modulus", "pair sharing intensity and all moduli");
    modulus->add_option("--n", n, "support length N >= 4")->required();
    modulus->add_option("--eta1", eta1, "eta1 > 1")->required();
    modulus->add_option("--eta2", eta2, "eta2 > 1")->required();
    modulus->callback([&] { code = cmd_modulus(o, n, eta1, eta2); });

    std::string zeros;
    std::optional<int> random_n;
    bool all = false;
    auto* phase = counter->add_subcommand("phase", "pair sharing intensity and all phases");
    phase->add_option("--zeros", zeros, "negative real zeros, comma separated");
    phase->add_option("--n", random_n, "draw N-1 random negative zeros (uses --seed)");
    phase->add_flag("--all", all, "every partner instead of the first");
    phase->callback([&] { code = cmd_phase(o, zeros, random_n, all); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_input;
    } catch (const pt::RootFindingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    } catch (const pt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return code;
}
