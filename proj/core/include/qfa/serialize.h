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

#ifndef QFA_SERIALIZE_H
#define QFA_SERIALIZE_H

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"
#include "qfa/automata.h"
#include "qfa/signrank.h"
#include "qfa/stochasticize.h"
#include "qfa/witnesses.h"

namespace qfa {

using json = nlohmann::json;

/// Schema version written into every automaton document.
constexpr int kFormatVersion = 1;

// Automaton documents: {"format": 1, "model": ..., "alphabet": [...], ...}.
// Matrices are arrays of rows, complex entries are [re, im] and exact
// rationals are "p/q" strings.
json to_json(const Gfa &g);
json to_json(const RationalGfa &g);
json to_json(const Pfa &p);
json to_json(const RationalPfa &p);
json to_json(const Moqfa &q);
json to_json(const Qcfa &a);

using AnyAutomaton = std::variant<Gfa, RationalGfa, Pfa, RationalPfa, Moqfa, Qcfa>;

/// Dispatches on "model" and "scalar_mode". Throws FormatError on malformed
/// documents; automaton invariants raise their usual exceptions.
AnyAutomaton automaton_from_json(const json &doc);
const char *model_name(const AnyAutomaton &a);
const Alphabet &alphabet_of(const AnyAutomaton &a);
/// f(w) as a double (exact values are rounded).
double evaluate_any(const AnyAutomaton &a, const Word &w);

/// Automaton document plus a "witness_meta" section.
json to_json(const QcfaWitnessBundle &b);
json to_json(const MoqfaWitnessBundle &b);

json to_json(const ShatteringReport &r);
json to_json(const ExpansionReport &r);
json to_json(const BasicConversionReport<double> &r);
json to_json(const BasicConversionReport<Rational> &r);
json to_json(const SignAgreementReport &r);
json to_json(const RankReport &r);
json to_json(const ForsterBound &f);

/// {"rows": [...], "cols": [...], "signs": [[...], ...]}.
json to_json(const SignMatrix &s);
SignMatrix sign_matrix_from_json(const json &doc);
/// Header row of column labels, then one line per row: label, then +1/-1.
std::string sign_matrix_to_csv(const SignMatrix &s);

json to_json(const RealizationMatrix &r);
RealizationMatrix realization_from_json(const json &doc);

/// Throws FormatError when the file cannot be read or parsed.
json read_json_file(const std::filesystem::path &path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path &path, const json &doc);
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace qfa

#endif
