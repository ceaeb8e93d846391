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

#include "qfa/serialize.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qfa {

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw FormatError(what);
    }
}

const json &field(const json &doc, const char *key) {
    require(doc.is_object(), "expected a JSON object");
    auto it = doc.find(key);
    require(it != doc.end(), std::string("missing field '") + key + "'");
    return *it;
}

json finite_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

json scalar_to_json(double x) {
    return x;
}
json scalar_to_json(const Rational &x) {
    return rational_to_string(x);
}

template <typename T>
T scalar_from_json(const json &j);

template <>
double scalar_from_json<double>(const json &j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    require(j.is_string(), "expected a number or a rational string");
    try {
        return parse_rational(j.get<std::string>()).get_d();
    } catch (const InvariantViolation &e) {
        throw FormatError(e.what());
    }
}

template <>
Rational scalar_from_json<Rational>(const json &j) {
    if (j.is_number_integer()) {
        return Rational(j.dump());
    }
    require(j.is_string(), "exact-rational entries must be \"p/q\" strings or integers");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InvariantViolation &e) {
        throw FormatError(e.what());
    }
}

template <typename T>
json vector_to_json(const std::vector<T> &v) {
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(scalar_to_json(x));
    }
    return out;
}

template <typename T>
std::vector<T> vector_from_json(const json &j) {
    require(j.is_array(), "expected an array");
    std::vector<T> out;
    out.reserve(j.size());
    for (const auto &x : j) {
        out.push_back(scalar_from_json<T>(x));
    }
    return out;
}

template <typename T>
json matrix_to_json(const Matrix<T> &m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); j++) {
            row.push_back(scalar_to_json(m(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

template <typename T>
Matrix<T> matrix_from_json(const json &j) {
    require(j.is_array(), "expected a matrix (array of rows)");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    Matrix<T> m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        require(j[r].is_array() && j[r].size() == cols, "matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = scalar_from_json<T>(j[r][c]);
        }
    }
    return m;
}

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            "complex entries must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_vector_to_json(const ComplexVector &v) {
    json out = json::array();
    for (auto z : v) {
        out.push_back(complex_to_json(z));
    }
    return out;
}

ComplexVector complex_vector_from_json(const json &j) {
    require(j.is_array(), "expected an array of complex numbers");
    ComplexVector v;
    for (const auto &z : j) {
        v.push_back(complex_from_json(z));
    }
    return v;
}

json complex_matrix_to_json(const ComplexMatrix &m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); j++) {
            row.push_back(complex_to_json(m(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

ComplexMatrix complex_matrix_from_json(const json &j) {
    require(j.is_array(), "expected a matrix (array of rows)");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        require(j[r].is_array() && j[r].size() == cols, "matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

json header(const char *model, const Alphabet &alphabet) {
    json doc;
    doc["format"] = kFormatVersion;
    doc["model"] = model;
    doc["alphabet"] = alphabet.symbols();
    return doc;
}

std::vector<std::string> string_array(const json &j, const char *what) {
    require(j.is_array(), std::string("'") + what + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto &s : j) {
        require(s.is_string(), std::string("'") + what + "' must be an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

Alphabet alphabet_from_json(const json &doc) {
    return Alphabet(string_array(field(doc, "alphabet"), "alphabet"));
}

std::size_t index_field(const json &doc, const char *key) {
    const auto &j = field(doc, key);
    require(j.is_number_unsigned(), std::string("'") + key + "' must be a non-negative integer");
    return j.get<std::size_t>();
}

/// Parses one entry per alphabet symbol from the object "transitions".
template <typename F>
auto per_symbol(const json &doc, const Alphabet &alphabet, F &&parse) {
    const auto &t = field(doc, "transitions");
    require(t.is_object(), "'transitions' must be an object keyed by symbol");
    require(t.size() == alphabet.size(), "'transitions' must have exactly one entry per symbol");
    std::vector<decltype(parse(t.begin().value()))> out;
    for (const auto &s : alphabet.symbols()) {
        auto it = t.find(s);
        require(it != t.end(), "no transition for symbol '" + s + "'");
        out.push_back(parse(*it));
    }
    return out;
}

template <typename T>
json gfa_to_json(const BasicGfa<T> &g) {
    json doc = header("gfa", g.alphabet());
    doc["scalar_mode"] = ScalarTraits<T>::mode_name;
    doc["states"] = g.states();
    doc["initial"] = vector_to_json(g.initial());
    json t = json::object();
    for (std::size_t s = 0; s < g.alphabet().size(); s++) {
        t[g.alphabet()[s]] = matrix_to_json(g.transition(s));
    }
    doc["transitions"] = std::move(t);
    doc["final"] = vector_to_json(g.final_vector());
    return doc;
}

template <typename T>
BasicGfa<T> gfa_from_json(const json &doc) {
    auto alphabet = alphabet_from_json(doc);
    auto transitions = per_symbol(doc, alphabet, [](const json &m) { return matrix_from_json<T>(m); });
    return BasicGfa<T>(std::move(alphabet), vector_from_json<T>(field(doc, "initial")), std::move(transitions),
                       vector_from_json<T>(field(doc, "final")));
}

template <typename T>
json pfa_to_json(const BasicPfa<T> &p) {
    json doc = header("pfa", p.alphabet());
    doc["scalar_mode"] = ScalarTraits<T>::mode_name;
    doc["states"] = p.states();
    doc["initial"] = vector_to_json(p.initial());
    json t = json::object();
    for (std::size_t s = 0; s < p.alphabet().size(); s++) {
        t[p.alphabet()[s]] = matrix_to_json(p.transition(s));
    }
    doc["transitions"] = std::move(t);
    doc["end_marker"] = matrix_to_json(p.end_marker());
    doc["accepting"] = p.accepting();
    return doc;
}

template <typename T>
BasicPfa<T> pfa_from_json(const json &doc) {
    auto alphabet = alphabet_from_json(doc);
    auto transitions = per_symbol(doc, alphabet, [](const json &m) { return matrix_from_json<T>(m); });
    const auto &acc = field(doc, "accepting");
    require(acc.is_array(), "'accepting' must be an array of state indices");
    std::vector<std::size_t> accepting;
    for (const auto &f : acc) {
        require(f.is_number_unsigned(), "'accepting' must be an array of state indices");
        accepting.push_back(f.get<std::size_t>());
    }
    return BasicPfa<T>(std::move(alphabet), vector_from_json<T>(field(doc, "initial")), std::move(transitions),
                       matrix_from_json<T>(field(doc, "end_marker")), std::move(accepting));
}

Moqfa moqfa_from_json(const json &doc) {
    auto alphabet = alphabet_from_json(doc);
    auto unitaries = per_symbol(doc, alphabet, [](const json &m) { return complex_matrix_from_json(m); });
    return Moqfa(std::move(alphabet), complex_vector_from_json(field(doc, "initial_state")), std::move(unitaries),
                 Projector(complex_matrix_from_json(field(doc, "accept"))));
}

Qcfa qcfa_from_json(const json &doc) {
    auto alphabet = alphabet_from_json(doc);
    const std::size_t c = index_field(doc, "classical_states");
    const std::size_t q = index_field(doc, "quantum_dim");
    const std::size_t sigma = alphabet.size();
    std::vector<std::size_t> delta(c * sigma);
    std::vector<KrausChannel> channels(c * sigma);
    auto entries = per_symbol(doc, alphabet, [&](const json &per_state) {
        require(per_state.is_array() && per_state.size() == c,
                "each QCFA transition needs one entry per classical state");
        return per_state;
    });
    for (std::size_t sym = 0; sym < sigma; sym++) {
        for (std::size_t i = 0; i < c; i++) {
            const auto &entry = entries[sym][i];
            delta[i * sigma + sym] = index_field(entry, "next");
            const auto &ks = field(entry, "kraus");
            require(ks.is_array(), "'kraus' must be an array of matrices");
            std::vector<ComplexMatrix> kraus;
            for (const auto &k : ks) {
                kraus.push_back(complex_matrix_from_json(k));
            }
            channels[i * sigma + sym] = KrausChannel(std::move(kraus));
        }
    }
    return Qcfa(std::move(alphabet), c, q, index_field(doc, "initial_classical"),
                DensityOperator(complex_matrix_from_json(field(doc, "initial_quantum"))), std::move(delta),
                std::move(channels), EffectOperator(complex_matrix_from_json(field(doc, "accept"))));
}

template <typename T>
json conversion_report_to_json(const BasicConversionReport<T> &r) {
    return json{{"scalar_mode", ScalarTraits<T>::mode_name},
                {"input_states", r.input_states},
                {"output_states", r.output_states},
                {"shift_c", scalar_to_json(r.shift)},
                {"embedding_m", r.scale_m},
                {"offset_a", scalar_to_json(r.offset_a)},
                {"scale_b", scalar_to_json(r.scale_b)},
                {"block_mass_T", scalar_to_json(r.block_mass)}};
}

std::string csv_cell(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

}  // namespace

json to_json(const Gfa &g) {
    return gfa_to_json(g);
}
json to_json(const RationalGfa &g) {
    return gfa_to_json(g);
}
json to_json(const Pfa &p) {
    return pfa_to_json(p);
}
json to_json(const RationalPfa &p) {
    return pfa_to_json(p);
}

json to_json(const Moqfa &q) {
    json doc = header("moqfa", q.alphabet());
    doc["dim"] = q.dim();
    doc["initial_state"] = complex_vector_to_json(q.initial_state());
    json t = json::object();
    for (std::size_t s = 0; s < q.alphabet().size(); s++) {
        t[q.alphabet()[s]] = complex_matrix_to_json(q.unitary(s));
    }
    doc["transitions"] = std::move(t);
    doc["accept"] = complex_matrix_to_json(q.accept().matrix());
    return doc;
}

json to_json(const Qcfa &a) {
    json doc = header("qcfa", a.alphabet());
    doc["classical_states"] = a.classical_states();
    doc["quantum_dim"] = a.quantum_dim();
    doc["initial_classical"] = a.initial_classical();
    doc["initial_quantum"] = complex_matrix_to_json(a.initial_quantum().matrix());
    json t = json::object();
    for (std::size_t s = 0; s < a.alphabet().size(); s++) {
        json per_state = json::array();
        for (std::size_t i = 0; i < a.classical_states(); i++) {
            json kraus = json::array();
            for (const auto &k : a.channel(i, s).kraus()) {
                kraus.push_back(complex_matrix_to_json(k));
            }
            per_state.push_back(json{{"next", a.next_state(i, s)}, {"kraus", std::move(kraus)}});
        }
        t[a.alphabet()[s]] = std::move(per_state);
    }
    doc["transitions"] = std::move(t);
    doc["accept"] = complex_matrix_to_json(a.accept().matrix());
    return doc;
}

AnyAutomaton automaton_from_json(const json &doc) {
    require(doc.is_object(), "automaton document must be a JSON object");
    if (doc.contains("format")) {
        require(doc["format"] == kFormatVersion, "unsupported format version " + doc["format"].dump());
    }
    const auto &model_field = field(doc, "model");
    require(model_field.is_string(), "'model' must be a string");
    const auto model = model_field.get<std::string>();
    try {
        const bool exact = doc.value("scalar_mode", std::string("float")) == ScalarTraits<Rational>::mode_name;
        if (model == "gfa") {
            return exact ? AnyAutomaton(gfa_from_json<Rational>(doc)) : AnyAutomaton(gfa_from_json<double>(doc));
        }
        if (model == "pfa") {
            return exact ? AnyAutomaton(pfa_from_json<Rational>(doc)) : AnyAutomaton(pfa_from_json<double>(doc));
        }
        if (model == "moqfa") {
            return moqfa_from_json(doc);
        }
        if (model == "qcfa") {
            return qcfa_from_json(doc);
        }
    } catch (const json::exception &e) {
        throw FormatError("malformed " + model + " document: " + e.what());
    }
    throw FormatError("unknown model '" + model + "'");
}

const char *model_name(const AnyAutomaton &a) {
    switch (a.index()) {
        case 0:
        case 1:
            return "gfa";
        case 2:
        case 3:
            return "pfa";
        case 4:
            return "moqfa";
        default:
            return "qcfa";
    }
}

const Alphabet &alphabet_of(const AnyAutomaton &a) {
    return std::visit([](const auto &x) -> const Alphabet & { return x.alphabet(); }, a);
}

double evaluate_any(const AnyAutomaton &a, const Word &w) {
    return std::visit(
        [&](const auto &x) -> double {
            auto f = evaluate(x, w);
            return ScalarTraits<decltype(f)>::to_double(f);
        },
        a);
}

json to_json(const QcfaWitnessBundle &b) {
    json doc = to_json(b.automaton);
    doc["witness_meta"] = json{{"kind", "qcfa"},
                               {"c", b.c},
                               {"q", b.q},
                               {"d", b.d},
                               {"t", b.t},
                               {"M_bound", b.m_bound},
                               {"epsilon", b.epsilon},
                               {"tests", b.etas.size()},
                               {"eta_mode", b.eta_mode.describe()},
                               {"seed", b.eta_mode.seed}};
    return doc;
}

json to_json(const MoqfaWitnessBundle &b) {
    json doc = to_json(b.automaton);
    doc["witness_meta"] = json{{"kind", "moqfa"},
                               {"n", b.n},
                               {"r", b.r},
                               {"s", b.s},
                               {"d", b.d},
                               {"t", b.t},
                               {"tests", b.etas.size()},
                               {"eta_mode", b.eta_mode.describe()},
                               {"seed", b.eta_mode.seed}};
    return doc;
}

json to_json(const ShatteringReport &r) {
    json dis = json::array();
    for (auto [i, j] : r.disagreements) {
        dis.push_back(json::array({i, j}));
    }
    return json{{"pairs_checked", r.pairs_checked},
                {"agreements", r.agreements},
                {"min_margin", finite_or_null(r.min_margin)},
                {"ambiguous_count", r.ambiguous_count},
                {"disagreements", std::move(dis)},
                {"passed", r.passed()}};
}

json to_json(const ExpansionReport &r) {
    return json{{"pairs", r.pairs},
                {"max_residual", r.max_residual},
                {"remainder_bound", r.bound},
                {"min_margin", finite_or_null(r.min_margin)},
                {"within_bound", r.within_bound()}};
}

json to_json(const BasicConversionReport<double> &r) {
    return conversion_report_to_json(r);
}
json to_json(const BasicConversionReport<Rational> &r) {
    return conversion_report_to_json(r);
}

json to_json(const SignAgreementReport &r) {
    json doc{{"words_checked", r.words_checked},
             {"ambiguous", r.ambiguous},
             {"agree", r.agree},
             {"min_margin", finite_or_null(r.min_margin)}};
    if (r.first_disagreement) {
        doc["first_disagreement"] = json{{"word", word_to_string(*r.first_disagreement)},
                                         {"reference_value", r.reference_value},
                                         {"simulator_value", r.simulator_value}};
    } else {
        doc["first_disagreement"] = nullptr;
    }
    return doc;
}

json to_json(const RankReport &r) {
    return json{{"rank", r.rank}, {"singular_values", r.singular_values}};
}

json to_json(const ForsterBound &f) {
    return json{{"side", f.side}, {"spectral_norm", f.spectral_norm}, {"bound", f.bound}, {"cap", f.cap}};
}

json to_json(const SignMatrix &s) {
    json signs = json::array();
    for (std::size_t i = 0; i < s.rows(); i++) {
        json row = json::array();
        for (std::size_t j = 0; j < s.cols(); j++) {
            row.push_back(s(i, j));
        }
        signs.push_back(std::move(row));
    }
    return json{{"rows", s.row_labels()}, {"cols", s.col_labels()}, {"signs", std::move(signs)}};
}

SignMatrix sign_matrix_from_json(const json &doc) {
    auto rows = string_array(field(doc, "rows"), "rows");
    auto cols = string_array(field(doc, "cols"), "cols");
    const auto &signs = field(doc, "signs");
    require(signs.is_array() && signs.size() == rows.size(), "'signs' must have one row per row label");
    Matrix<int> m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); i++) {
        require(signs[i].is_array() && signs[i].size() == cols.size(),
                "'signs' row " + std::to_string(i) + " must have one entry per column label");
        for (std::size_t j = 0; j < cols.size(); j++) {
            require(signs[i][j] == 1 || signs[i][j] == -1, "sign entries must be +1 or -1");
            m(i, j) = signs[i][j].get<int>();
        }
    }
    return SignMatrix(std::move(rows), std::move(cols), std::move(m));
}

std::string sign_matrix_to_csv(const SignMatrix &s) {
    std::ostringstream out;
    out << "prefix";
    for (const auto &c : s.col_labels()) {
        out << ',' << csv_cell(c);
    }
    out << '\n';
    for (std::size_t i = 0; i < s.rows(); i++) {
        out << csv_cell(s.row_labels()[i]);
        for (std::size_t j = 0; j < s.cols(); j++) {
            out << ',' << (s(i, j) > 0 ? "+1" : "-1");
        }
        out << '\n';
    }
    return out.str();
}

json to_json(const RealizationMatrix &r) {
    return json{{"matrix", matrix_to_json(r.matrix)},
                {"rows", r.row_labels},
                {"cols", r.col_labels},
                {"claimed_rank_bound", r.claimed_rank_bound},
                {"source", to_string(r.source)},
                {"epsilon", r.epsilon},
                {"cutpoint", r.cutpoint}};
}

RealizationMatrix realization_from_json(const json &doc) {
    RealizationMatrix r;
    try {
        r.matrix = matrix_from_json<double>(field(doc, "matrix"));
        if (doc.contains("rows")) {
            r.row_labels = string_array(doc["rows"], "rows");
        }
        if (doc.contains("cols")) {
            r.col_labels = string_array(doc["cols"], "cols");
        }
        r.claimed_rank_bound = doc.value("claimed_rank_bound", std::size_t{0});
        r.epsilon = doc.value("epsilon", 0.0);
        r.cutpoint = doc.value("cutpoint", 0.0);
        const auto source = doc.value("source", std::string("direct"));
        if (source == "pfa") {
            r.source = RealizationSource::pfa;
        } else if (source == "quantum") {
            r.source = RealizationSource::quantum;
        } else {
            require(source == "direct", "unknown realization source '" + source + "'");
        }
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed realization: ") + e.what());
    }
    return r;
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot read " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const json &doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

}  // namespace qfa
