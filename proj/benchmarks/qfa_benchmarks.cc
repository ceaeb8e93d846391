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

#include <benchmark/benchmark.h>

#include "qfa/automata.h"
#include "qfa/linearize.h"
#include "qfa/opcore.h"
#include "qfa/signrank.h"
#include "qfa/stochasticize.h"
#include "qfa/witnesses.h"

using namespace qfa;

namespace {

ComplexMatrix fixed_hermitian(std::size_t n) {
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i; j < n; j++) {
            Complex z(std::sin(1.0 + i + 2.0 * j), i == j ? 0.0 : std::cos(3.0 * i + j));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

}  // namespace

static void BM_eigh(benchmark::State &state) {
    auto h = fixed_hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(h));
    }
}
BENCHMARK(BM_eigh)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_expm(benchmark::State &state) {
    auto h = fixed_hermitian(static_cast<std::size_t>(state.range(0))) * Complex(0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm(h));
    }
}
BENCHMARK(BM_expm)->Arg(4)->Arg(8)->Arg(16);

static void BM_qcfa_witness(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_qcfa_witness(2, 2, EtaMode::full()));
    }
}
BENCHMARK(BM_qcfa_witness)->Unit(benchmark::kMillisecond);

static void BM_moqfa_witness(benchmark::State &state) {
    auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_moqfa_witness(n, EtaMode::full()));
    }
}
BENCHMARK(BM_moqfa_witness)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_gfa_to_pfa_float(benchmark::State &state) {
    auto g = qcfa_to_gfa(build_qcfa_witness(2, 2, EtaMode::full()).automaton);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gfa_to_pfa(g, 0.5));
    }
}
BENCHMARK(BM_gfa_to_pfa_float)->Unit(benchmark::kMillisecond);

static void BM_gfa_to_pfa_exact(benchmark::State &state) {
    auto k = static_cast<std::size_t>(state.range(0));
    std::vector<Matrix<Rational>> ms;
    for (int s = 0; s < 2; s++) {
        Matrix<Rational> m(k, k);
        for (std::size_t i = 0; i < k; i++) {
            for (std::size_t j = 0; j < k; j++) {
                m(i, j) = Rational(static_cast<long>((3 * i + 5 * j + s) % 7) - 3, 1 + (i + j) % 8);
            }
        }
        ms.push_back(m);
    }
    RationalGfa g(Alphabet({"a", "b"}), std::vector<Rational>(k, Rational(1, 2)), ms,
                  std::vector<Rational>(k, Rational(-1, 3)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gfa_to_pfa(g, Rational(1, 5)));
    }
}
BENCHMARK(BM_gfa_to_pfa_exact)->Arg(2)->Arg(4)->Arg(8);

static void BM_evaluate_qcfa_witness(benchmark::State &state) {
    auto b = build_qcfa_witness(2, 2, EtaMode::full());
    auto pre = b.prefixes();
    auto suf = b.suffixes();
    for (auto _ : state) {
        double acc = 0;
        for (const auto &x : pre) {
            for (const auto &y : suf) {
                acc += evaluate_qcfa(b.automaton, {x[0], y[0]});
            }
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_evaluate_qcfa_witness)->Unit(benchmark::kMillisecond);

static void BM_spectral_norm(benchmark::State &state) {
    auto c = complete_shattering(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_norm(c));
    }
}
BENCHMARK(BM_spectral_norm)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK_MAIN();
