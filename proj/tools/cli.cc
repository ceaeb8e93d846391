// Copyright 2026 The qfa-cutpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "qfa/linearize.h"
#include "qfa/serialize.h"
#include "qfa/signrank.h"
#include "qfa/stochasticize.h"
#include "qfa/witnesses.h"

namespace qfa::cli {

namespace {

constexpr std::size_t kMaxEnumeratedWords = 2000000;
const std::string kWitnessCutpoint = "1/2";

std::filesystem::path output_dir(const RunConfig &cfg) {
    auto dir = cfg.out_dir.value_or(".");
    std::filesystem::create_directories(dir);
    return dir;
}

json tolerances_json(const Tolerances &t) {
    return json{{"herm", t.herm}, {"psd", t.psd}, {"eq", t.eq}, {"rank", t.rank}};
}

json config_json(const RunConfig &cfg) {
    json j{{"command", cfg.command},
           {"eta", cfg.eta},
           {"seed", cfg.seed},
           {"max_len", cfg.max_len},
           {"exact", cfg.exact},
           {"tolerances", tolerances_json(cfg.tol)}};
    if (!cfg.kind.empty()) {
        j["kind"] = cfg.kind;
        if (cfg.kind == "qcfa") {
            j["c"] = cfg.c;
            j["q"] = cfg.q;
        } else {
            j["n"] = cfg.n;
        }
    }
    if (!cfg.input.empty()) {
        j["input"] = cfg.input.string();
        j["cutpoint"] = cfg.cutpoint;
    }
    return j;
}

std::size_t count_words(std::size_t alphabet, std::size_t max_len) {
    std::size_t total = 0;
    std::size_t level = 1;
    for (std::size_t len = 0; len <= max_len; len++) {
        total += level;
        if (total > kMaxEnumeratedWords) {
            return total;
        }
        level *= alphabet;
    }
    return total;
}

std::vector<Word> enumerate_checked(const std::vector<std::string> &alphabet, std::size_t max_len) {
    if (count_words(alphabet.size(), max_len) > kMaxEnumeratedWords) {
        throw InvalidParameter("enumerating all words up to length " + std::to_string(max_len) + " over " +
                               std::to_string(alphabet.size()) + " symbols is too large; lower --max-len");
    }
    return enumerate_words(alphabet, max_len);
}

std::vector<Word> parse_words(const std::vector<std::string> &texts) {
    std::vector<Word> out;
    for (const auto &t : texts) {
        out.push_back(parse_word(t));
    }
    return out;
}

std::vector<Word> concatenations(const std::vector<Word> &prefixes, const std::vector<Word> &suffixes) {
    std::vector<Word> out;
    out.reserve(prefixes.size() * suffixes.size());
    for (const auto &x : prefixes) {
        for (const auto &y : suffixes) {
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out.push_back(std::move(w));
        }
    }
    return out;
}

double parse_cutpoint(const std::string &text) {
    try {
        return parse_rational(text).get_d();
    } catch (const InvariantViolation &) {
        throw InvalidParameter("--cutpoint must be a rational such as 1/2 or 0.25, got '" + text + "'");
    }
}

Rational parse_cutpoint_exact(const std::string &text) {
    try {
        return parse_rational(text);
    } catch (const InvariantViolation &) {
        throw InvalidParameter("--cutpoint must be a rational such as 1/2 or 0.25, got '" + text + "'");
    }
}

RationalGfa to_rational(const Gfa &g) {
    auto convert = [](double x) { return Rational(x); };
    std::vector<Rational> u;
    std::vector<Rational> v;
    for (double x : g.initial()) {
        u.push_back(convert(x));
    }
    for (double x : g.final_vector()) {
        v.push_back(convert(x));
    }
    std::vector<Matrix<Rational>> transitions;
    for (const auto &a : g.transitions()) {
        Matrix<Rational> m(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); i++) {
            for (std::size_t j = 0; j < a.cols(); j++) {
                m(i, j) = convert(a(i, j));
            }
        }
        transitions.push_back(std::move(m));
    }
    return RationalGfa(g.alphabet(), std::move(u), std::move(transitions), std::move(v));
}

/// Witness grid shared by `witness` and `pipeline`.
struct WitnessGrid {
    std::vector<Word> prefixes;
    std::vector<Word> suffixes;
    SignMatrix expected;
    std::size_t d = 0;
    double t = 0;
    json bundle;
};

template <typename Automaton>
double closed_form_deviation(const Automaton &a, const WitnessGrid &g, const std::vector<std::vector<int>> &etas) {
    double worst = 0;
    for (std::size_t k = 0; k < g.suffixes.size(); k++) {
        for (std::size_t l = 0; l < g.prefixes.size(); l++) {
            Word w{g.prefixes[l][0], g.suffixes[k][0]};
            worst = std::max(worst, std::abs(evaluate(a, w) - (0.5 + g.t * etas[k][l])));
        }
    }
    return worst;
}

template <typename Automaton>
int finish_pipeline(const RunConfig &cfg, std::ostream &out, const Automaton &automaton, const Gfa &gfa,
                    const WitnessGrid &grid, std::size_t gfa_bound, json report) {
    const auto dir = output_dir(cfg);
    auto converted = gfa_to_pfa(gfa, 0.5);
    const Pfa &pfa = converted.pfa;
    const std::size_t pfa_bound = 2 * gfa_bound + 6;

    auto quantum = [&](const Word &w) { return evaluate(automaton, w); };
    auto linear = [&](const Word &w) { return evaluate_gfa(gfa, w); };
    auto stochastic = [&](const Word &w) { return evaluate_pfa(pfa, w); };

    auto witness_words = concatenations(grid.prefixes, grid.suffixes);
    auto witness_agreement = verify_sign_agreement_on(witness_words, quantum, 0.5, stochastic, 0.5, cfg.tol);

    std::vector<std::string> sub = cfg.sub_alphabet;
    if (sub.empty()) {
        sub = {grid.prefixes.front().front(), grid.suffixes.front().front()};
    }
    for (const auto &s : sub) {
        automaton.alphabet().index_of(s);
    }
    auto enumerated = enumerate_checked(sub, cfg.max_len);
    auto enum_agreement = verify_sign_agreement_on(enumerated, quantum, 0.5, stochastic, 0.5, cfg.tol);

    double linearization_error = 0;
    for (const auto *words : {&witness_words, &enumerated}) {
        for (const auto &w : *words) {
            linearization_error = std::max(linearization_error, std::abs(quantum(w) - linear(w)));
        }
    }

    const bool counts_ok = gfa.states() == gfa_bound && pfa.states() == pfa_bound && pfa.states() >= grid.d;
    const bool ok = counts_ok && witness_agreement.agree && enum_agreement.agree;

    report["states"] = json{{"gfa", gfa.states()},
                            {"gfa_bound", gfa_bound},
                            {"pfa", pfa.states()},
                            {"pfa_bound", pfa_bound},
                            {"lower_bound_d", grid.d},
                            {"consistent", counts_ok}};
    report["conversion"] = to_json(converted.report);
    report["linearization_max_error"] = linearization_error;
    report["witness_agreement"] = to_json(witness_agreement);
    report["enumerated_agreement"] = to_json(enum_agreement);
    report["enumerated_agreement"]["sub_alphabet"] = sub;
    report["passed"] = ok;

    write_json_file(dir / "witness.json", grid.bundle);
    write_json_file(dir / "gfa.json", to_json(gfa));
    write_json_file(dir / "pfa.json", to_json(pfa));
    write_json_file(dir / "conversion_report.json", to_json(converted.report));
    write_json_file(dir / "pipeline_report.json", report);

    out << cfg.kind << " pipeline: GFA " << gfa.states() << " states (bound " << gfa_bound << "), PFA "
        << pfa.states() << " states (bound " << pfa_bound << "), d = " << grid.d << "\n";
    out << "witness words: " << witness_agreement.words_checked << " checked, "
        << (witness_agreement.agree ? "signs agree" : "DISAGREEMENT") << ", min PFA margin "
        << witness_agreement.min_margin << "\n";
    out << "enumerated words (|w| <= " << cfg.max_len << "): " << enum_agreement.words_checked << " checked, "
        << enum_agreement.ambiguous << " at the cutpoint, " << (enum_agreement.agree ? "signs agree" : "DISAGREEMENT")
        << "\n";
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kVerificationFailed;
}

template <typename Bundle>
WitnessGrid make_grid(const Bundle &b) {
    return WitnessGrid{b.prefixes(), b.suffixes(), b.expected_signs(), b.d, b.t, to_json(b)};
}

}  // namespace

int cmd_witness(const RunConfig &cfg, std::ostream &out) {
    const auto mode = parse_eta_mode(cfg.eta, cfg.seed);
    json report{{"config", config_json(cfg)}, {"cutpoint", kWitnessCutpoint}};
    bool ok = false;
    WitnessGrid grid;
    ShatteringReport shattering;
    if (cfg.kind == "qcfa") {
        auto b = build_qcfa_witness(cfg.c, cfg.q, mode);
        grid = make_grid(b);
        shattering = verify_shattering(b.automaton, grid.prefixes, grid.suffixes, 0.5, grid.expected, cfg.tol);
        report["witness"] = grid.bundle["witness_meta"];
        report["closed_form_max_deviation"] = closed_form_deviation(b.automaton, grid, b.etas);
        ok = shattering.passed();
    } else if (cfg.kind == "moqfa") {
        auto b = build_moqfa_witness(cfg.n, mode);
        grid = make_grid(b);
        shattering = verify_shattering(b.automaton, grid.prefixes, grid.suffixes, 0.5, grid.expected, cfg.tol);
        auto expansion = verify_moqfa_expansion(b);
        report["witness"] = grid.bundle["witness_meta"];
        report["expansion"] = to_json(expansion);
        report["margin_floor"] = 43.0 / 48.0 * b.t;
        ok = shattering.passed() && expansion.within_bound();
        out << "expansion: max |delta| = " << expansion.max_residual << " (bound " << expansion.bound << ")\n";
    } else {
        throw InvalidParameter("witness kind must be qcfa or moqfa");
    }
    report["grid"] = json{{"prefixes", grid.prefixes.size()}, {"suffixes", grid.suffixes.size()}};
    report["shattering"] = to_json(shattering);
    report["passed"] = ok;

    const auto dir = output_dir(cfg);
    write_json_file(dir / "witness.json", grid.bundle);
    write_json_file(dir / "shattering_report.json", report);

    out << cfg.kind << " witness: d = " << grid.d << ", t = " << grid.t << ", grid " << grid.prefixes.size() << "x"
        << grid.suffixes.size() << "\n";
    out << "shattering: " << shattering.agreements << "/" << shattering.pairs_checked << " signs correct, "
        << shattering.ambiguous_count << " ambiguous, min margin " << shattering.min_margin << "\n";
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kVerificationFailed;
}

int cmd_pipeline(const RunConfig &cfg, std::ostream &out) {
    const auto mode = parse_eta_mode(cfg.eta, cfg.seed);
    json report{{"config", config_json(cfg)}, {"cutpoint", kWitnessCutpoint}};
    if (cfg.kind == "qcfa") {
        auto b = build_qcfa_witness(cfg.c, cfg.q, mode);
        report["witness"] = to_json(b)["witness_meta"];
        return finish_pipeline(cfg, out, b.automaton, qcfa_to_gfa(b.automaton), make_grid(b), b.c * b.q * b.q,
                               std::move(report));
    }
    if (cfg.kind == "moqfa") {
        auto b = build_moqfa_witness(cfg.n, mode);
        report["witness"] = to_json(b)["witness_meta"];
        return finish_pipeline(cfg, out, b.automaton, moqfa_to_gfa(b.automaton), make_grid(b), b.n * b.n,
                               std::move(report));
    }
    throw InvalidParameter("pipeline kind must be qcfa or moqfa");
}

int cmd_analyze(const RunConfig &cfg, std::ostream &out) {
    const SignMatrix s = sign_matrix_from_json(read_json_file(cfg.input));
    json report{{"config", config_json(cfg)}, {"rows", s.rows()}, {"cols", s.cols()}};
    report["spectral_norm"] = spectral_norm(s);
    auto sign_rank_upper = numerical_rank_report(s.to_real(), cfg.tol.rank);
    report["matrix_rank"] = to_json(sign_rank_upper);
    const bool complete = is_complete_shattering(s);
    report["complete_shattering"] = complete;

    std::optional<ForsterBound> forster;
    if (cfg.square) {
        forster = forster_bound(square_submatrix(s, *cfg.square));
        report["forster_submatrix_side"] = *cfg.square;
    } else if (s.is_square() || cfg.forster) {
        forster = forster_bound(s);
    }
    json log2_bounds{{"matrix_rank_upper", std::log2(std::max<std::size_t>(1, sign_rank_upper.rank))}};
    if (forster) {
        report["forster"] = to_json(*forster);
        log2_bounds["forster_lower"] = std::log2(std::max(1.0, forster->bound));
    } else {
        report["forster"] = nullptr;
    }

    bool ok = true;
    if (cfg.realization) {
        auto r = realization_from_json(read_json_file(*cfg.realization));
        if (r.matrix.rows() != s.rows() || r.matrix.cols() != s.cols()) {
            throw DimensionMismatch("realization is " + r.matrix.shape_str() + " but the sign matrix is " +
                                    std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
        }
        auto rank = numerical_rank_report(r.matrix, cfg.tol.rank);
        auto consistency = sign_consistency(r, s, cfg.tol);
        json rj{{"rank", to_json(rank)},
                {"claimed_rank_bound", r.claimed_rank_bound},
                {"source", to_string(r.source)},
                {"sign_consistent", consistency.consistent},
                {"violations", consistency.violations},
                {"fragile", consistency.fragile},
                {"min_signed_margin", std::isfinite(consistency.min_signed_margin)
                                          ? json(consistency.min_signed_margin)
                                          : json(nullptr)}};
        ok = consistency.consistent;
        if (complete) {
            bool cert = orthant_certificate(r, s, cfg.tol);
            rj["orthant_certificate"] = cert;
            ok = ok && cert;
        }
        log2_bounds["realization_rank_upper"] = std::log2(std::max<std::size_t>(1, rank.rank));
        report["realization"] = std::move(rj);
    }
    report["log2_rank_bounds"] = std::move(log2_bounds);
    report["passed"] = ok;

    if (cfg.out_dir) {
        write_json_file(output_dir(cfg) / "analysis.json", report);
    }
    out << report.dump(2) << "\n";
    return ok ? kOk : kVerificationFailed;
}

int cmd_simulate(const RunConfig &cfg, std::ostream &out) {
    const auto automaton = automaton_from_json(read_json_file(cfg.input));
    const auto &alphabet = alphabet_of(automaton);
    auto words = cfg.words.empty() ? enumerate_checked(alphabet.symbols(), cfg.max_len) : parse_words(cfg.words);
    const double lambda = parse_cutpoint(cfg.cutpoint);

    json results = json::array();
    for (const auto &w : words) {
        json entry{{"word", word_to_string(w)}};
        if (const auto *g = std::get_if<RationalGfa>(&automaton)) {
            auto f = evaluate(*g, w);
            auto m = member(f, parse_cutpoint_exact(cfg.cutpoint));
            entry["value"] = f.get_d();
            entry["exact"] = rational_to_string(f);
            entry["accepted"] = m.sign > 0;
        } else if (const auto *p = std::get_if<RationalPfa>(&automaton)) {
            auto f = evaluate(*p, w);
            auto m = member(f, parse_cutpoint_exact(cfg.cutpoint));
            entry["value"] = f.get_d();
            entry["exact"] = rational_to_string(f);
            entry["accepted"] = m.sign > 0;
        } else {
            double f = evaluate_any(automaton, w);
            auto m = member(f, CutpointSpec{lambda}, cfg.tol);
            entry["value"] = f;
            entry["accepted"] = m.sign > 0;
            entry["ambiguous"] = m.ambiguous;
        }
        results.push_back(std::move(entry));
    }
    json report{{"config", config_json(cfg)}, {"model", model_name(automaton)}, {"results", std::move(results)}};
    if (cfg.out_dir) {
        write_json_file(output_dir(cfg) / "simulation.json", report);
    }
    out << report.dump(2) << "\n";
    return kOk;
}

int cmd_linearize(const RunConfig &cfg, std::ostream &out) {
    const auto automaton = automaton_from_json(read_json_file(cfg.input));
    Gfa g = [&] {
        if (const auto *a = std::get_if<Qcfa>(&automaton)) {
            return qcfa_to_gfa(*a);
        }
        if (const auto *q = std::get_if<Moqfa>(&automaton)) {
            return moqfa_to_gfa(*q);
        }
        throw InvalidParameter(std::string("linearize expects a qcfa or moqfa document, got ") +
                               model_name(automaton));
    }();
    write_json_file(output_dir(cfg) / "gfa.json", to_json(g));
    out << "GFA with " << g.states() << " states written to " << (output_dir(cfg) / "gfa.json").string() << "\n";
    return kOk;
}

int cmd_stochasticize(const RunConfig &cfg, std::ostream &out) {
    const auto automaton = automaton_from_json(read_json_file(cfg.input));
    const auto dir = output_dir(cfg);
    const auto *rg = std::get_if<RationalGfa>(&automaton);
    const auto *fg = std::get_if<Gfa>(&automaton);
    if (!rg && !fg) {
        throw InvalidParameter(std::string("stochasticize expects a gfa document, got ") + model_name(automaton));
    }
    json report{{"config", config_json(cfg)}};
    SignAgreementReport agreement;
    std::size_t states = 0;
    if (cfg.exact || rg) {
        const RationalGfa g = rg ? *rg : to_rational(*fg);
        const Rational lambda = parse_cutpoint_exact(cfg.cutpoint);
        auto s = gfa_to_pfa(g, lambda);
        auto words = enumerate_checked(g.alphabet().symbols(), cfg.max_len);
        agreement = verify_sign_agreement_on(
            words, [&](const Word &w) { return evaluate_gfa(g, w); }, lambda,
            [&](const Word &w) { return evaluate_pfa(s.pfa, w); }, s.cutpoint, cfg.tol);
        bool closed_form = true;
        for (const auto &w : words) {
            Rational gap = evaluate_gfa(g, w) - lambda;
            closed_form = closed_form && evaluate_pfa(s.pfa, w) == predicted_pfa_value(s.report, gap, w.size());
        }
        report["closed_form_exact"] = closed_form;
        report["conversion"] = to_json(s.report);
        write_json_file(dir / "pfa.json", to_json(s.pfa));
        write_json_file(dir / "conversion_report.json", to_json(s.report));
        states = s.pfa.states();
        agreement.agree = agreement.agree && closed_form;
    } else {
        const double lambda = parse_cutpoint(cfg.cutpoint);
        auto s = gfa_to_pfa(*fg, lambda);
        auto words = enumerate_checked(fg->alphabet().symbols(), cfg.max_len);
        agreement = verify_sign_agreement_on(
            words, [&](const Word &w) { return evaluate_gfa(*fg, w); }, lambda,
            [&](const Word &w) { return evaluate_pfa(s.pfa, w); }, s.cutpoint, cfg.tol);
        double deviation = 0;
        for (const auto &w : words) {
            double gap = evaluate_gfa(*fg, w) - lambda;
            deviation = std::max(deviation,
                                 std::abs(evaluate_pfa(s.pfa, w) - predicted_pfa_value(s.report, gap, w.size())));
        }
        report["closed_form_max_deviation"] = deviation;
        report["conversion"] = to_json(s.report);
        write_json_file(dir / "pfa.json", to_json(s.pfa));
        write_json_file(dir / "conversion_report.json", to_json(s.report));
        states = s.pfa.states();
    }
    report["agreement"] = to_json(agreement);
    report["passed"] = agreement.agree;
    write_json_file(dir / "stochasticize_report.json", report);
    out << "PFA with " << states << " states, cutpoint 1/2; sign agreement on " << agreement.words_checked
        << " words: " << (agreement.agree ? "yes" : "NO") << "\n";
    return agreement.agree ? kOk : kVerificationFailed;
}

int cmd_signmatrix(const RunConfig &cfg, std::ostream &out) {
    const json doc = read_json_file(cfg.input);
    const auto automaton = automaton_from_json(doc);
    const auto &alphabet = alphabet_of(automaton);

    std::vector<Word> prefixes = parse_words(cfg.prefixes);
    std::vector<Word> suffixes = parse_words(cfg.suffixes);
    if (prefixes.empty() && suffixes.empty() && doc.contains("witness_meta")) {
        for (const auto &s : alphabet.symbols()) {
            (s.rfind("p:", 0) == 0 ? prefixes : suffixes).push_back(Word{s});
        }
    }
    if (prefixes.empty()) {
        prefixes = enumerate_checked(alphabet.symbols(), cfg.max_len);
    }
    if (suffixes.empty()) {
        suffixes = enumerate_checked(alphabet.symbols(), cfg.max_len);
    }
    const double lambda = parse_cutpoint(cfg.cutpoint);
    auto induced = std::visit(
        [&](const auto &a) { return sign_matrix(a, lambda, prefixes, suffixes, cfg.tol); }, automaton);

    const auto dir = output_dir(cfg);
    write_json_file(dir / "signs.json", to_json(induced.signs));
    write_text_file(dir / "signs.csv", sign_matrix_to_csv(induced.signs));
    std::optional<RealizationMatrix> realization;
    if (const auto *p = std::get_if<Pfa>(&automaton)) {
        realization = pfa_realization(*p, lambda, prefixes, suffixes);
    } else if (const auto *rp = std::get_if<RationalPfa>(&automaton)) {
        realization = pfa_realization(*rp, parse_cutpoint_exact(cfg.cutpoint), prefixes, suffixes);
    } else if (const auto *q = std::get_if<Moqfa>(&automaton)) {
        realization = quantum_realization(*q, lambda, prefixes, suffixes);
    }
    if (realization) {
        write_json_file(dir / "realization.json", to_json(*realization));
    }
    out << "sign matrix " << induced.signs.rows() << "x" << induced.signs.cols() << ", "
        << induced.ambiguous.size() << " ambiguous entries"
        << (is_complete_shattering(induced.signs) ? ", complete shattering pattern" : "")
        << (realization ? ", realization written" : "") << "\n";
    return kOk;
}

int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    static const std::map<std::string, int (*)(const RunConfig &, std::ostream &)> commands{
        {"witness", cmd_witness},   {"pipeline", cmd_pipeline},           {"analyze", cmd_analyze},
        {"simulate", cmd_simulate}, {"linearize", cmd_linearize},         {"stochasticize", cmd_stochasticize},
        {"signmatrix", cmd_signmatrix},
    };
    auto it = commands.find(cfg.command);
    if (it == commands.end()) {
        err << "error: unknown command '" << cfg.command << "'\n";
        return kUsageError;
    }
    try {
        return it->second(cfg, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    std::vector<std::string> tol_overrides;
    std::string sub_alphabet;
    std::string out_dir;
    std::string realization;
    std::size_t square = 0;

    CLI::App app{"Quantum finite automata with cutpoint: witnesses, conversions, and sign-rank analysis", "qfa"};
    app.require_subcommand(1);

    auto common = [&](CLI::App *sub) {
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--tol", tol_overrides, "Tolerance override KEY=VAL (herm, psd, eq, rank)");
        sub->add_option("--max-len", cfg.max_len, "Maximum word length for enumeration")->capture_default_str();
        sub->add_option("--cutpoint", cfg.cutpoint, "Cutpoint lambda (rational)")->capture_default_str();
    };
    auto witness_params = [&](CLI::App *sub) {
        sub->add_option("kind", cfg.kind, "qcfa or moqfa")->required()->check(CLI::IsMember({"qcfa", "moqfa"}));
        sub->add_option("--c", cfg.c, "Classical states (qcfa)")->capture_default_str();
        sub->add_option("--q", cfg.q, "Quantum dimension (qcfa)")->capture_default_str();
        sub->add_option("--n", cfg.n, "Dimension (moqfa)")->capture_default_str();
        sub->add_option("--eta", cfg.eta, "Test vectors: full or sample:N")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Seed for sampled test vectors")->capture_default_str();
    };
    auto input = [&](CLI::App *sub, const char *what) {
        sub->add_option("input", cfg.input, what)->required();
    };

    auto *witness = app.add_subcommand("witness", "Build a shattering witness and verify its sign pattern");
    witness_params(witness);
    common(witness);

    auto *pipeline = app.add_subcommand("pipeline", "Witness -> GFA -> PFA with sign-agreement checks");
    witness_params(pipeline);
    common(pipeline);
    pipeline->add_option("--sub-alphabet", sub_alphabet, "Comma-separated symbols for enumerated words");

    auto *analyze = app.add_subcommand("analyze", "Spectral and rank analysis of a sign matrix file");
    input(analyze, "Sign matrix JSON");
    common(analyze);
    analyze->add_option("--realization", realization, "Realization matrix JSON");
    analyze->add_flag("--forster", cfg.forster, "Require the Forster bound (square input only)");
    analyze->add_option("--square", square, "Forster bound on the top-left KxK submatrix");

    auto *simulate = app.add_subcommand("simulate", "Evaluate an automaton file on words");
    input(simulate, "Automaton JSON");
    common(simulate);
    simulate->add_option("--word", cfg.words, "Word as space-separated symbols (repeatable)");

    auto *linearize = app.add_subcommand("linearize", "Convert a qcfa or moqfa file to a GFA");
    input(linearize, "Automaton JSON");
    common(linearize);

    auto *stochasticize = app.add_subcommand("stochasticize", "Convert a GFA file to a PFA with cutpoint 1/2");
    input(stochasticize, "GFA JSON");
    common(stochasticize);
    stochasticize->add_flag("--exact", cfg.exact, "Exact rational arithmetic");

    auto *signmatrix = app.add_subcommand("signmatrix", "Induced sign matrix of an automaton on a word grid");
    input(signmatrix, "Automaton JSON");
    common(signmatrix);
    signmatrix->add_option("--prefix", cfg.prefixes, "Row word (repeatable)");
    signmatrix->add_option("--suffix", cfg.suffixes, "Column word (repeatable)");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) {
        cfg.out_dir = out_dir;
    }
    if (!realization.empty()) {
        cfg.realization = realization;
    }
    if (square > 0) {
        cfg.square = square;
    }
    for (const auto &item : tol_overrides) {
        auto eq = item.find('=');
        bool ok = eq != std::string::npos;
        if (ok) {
            try {
                ok = cfg.tol.set(item.substr(0, eq), std::stod(item.substr(eq + 1)));
            } catch (const std::exception &) {
                ok = false;
            }
        }
        if (!ok) {
            err << "error: --tol expects KEY=VAL with KEY in {herm, psd, eq, rank}, got '" << item << "'\n";
            return kUsageError;
        }
    }
    std::stringstream symbols(sub_alphabet);
    for (std::string s; std::getline(symbols, s, ',');) {
        if (!s.empty()) {
            cfg.sub_alphabet.push_back(s);
        }
    }
    return dispatch(cfg, out, err);
}

}  // namespace qfa::cli
