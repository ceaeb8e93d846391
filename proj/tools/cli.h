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

#ifndef QFA_TOOLS_CLI_H
#define QFA_TOOLS_CLI_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfa/tolerances.h"

namespace qfa::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
};

constexpr std::uint64_t kDefaultSeed = 20260501;

/// Parsed flags of one invocation; every report echoes the relevant fields.
struct RunConfig {
    std::string command;
    /// qcfa | moqfa for witness and pipeline.
    std::string kind;
    /// Automaton, sign matrix, or GFA file for the file-based commands.
    std::filesystem::path input;
    std::optional<std::filesystem::path> realization;
    /// Output directory. Commands that produce artifacts default to ".";
    /// report-only commands write a file only when it is set.
    std::optional<std::filesystem::path> out_dir;

    std::size_t c = 2;
    std::size_t q = 2;
    std::size_t n = 2;
    std::string eta = "full";
    std::uint64_t seed = kDefaultSeed;
    /// Cutpoint as written; parsed as an exact rational where needed.
    std::string cutpoint = "1/2";
    std::size_t max_len = 3;
    bool exact = false;
    Tolerances tol;

    /// Restricts long-word enumeration in `pipeline` (default: first
    /// preparation symbol and first test symbol).
    std::vector<std::string> sub_alphabet;
    /// Explicit words for `simulate` / `signmatrix` (space-separated symbols).
    std::vector<std::string> words;
    std::vector<std::string> prefixes;
    std::vector<std::string> suffixes;
    bool forster = false;
    std::optional<std::size_t> square;
};

int cmd_witness(const RunConfig &cfg, std::ostream &out);
int cmd_pipeline(const RunConfig &cfg, std::ostream &out);
int cmd_analyze(const RunConfig &cfg, std::ostream &out);
int cmd_simulate(const RunConfig &cfg, std::ostream &out);
int cmd_linearize(const RunConfig &cfg, std::ostream &out);
int cmd_stochasticize(const RunConfig &cfg, std::ostream &out);
int cmd_signmatrix(const RunConfig &cfg, std::ostream &out);

/// Runs a command, mapping input and parameter errors to kUsageError.
int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qfa::cli

#endif
