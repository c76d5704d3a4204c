// Copyright 2026 The sparsediv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random instances, experiment driver and reporting.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sparsediv/numt.hpp"
#include "sparsediv/poly.hpp"

namespace sparsediv::bench {

enum class Alg { alg1, alg1pp, gsmc, verify, approx };

std::string to_string(Alg alg);
/// Throws std::invalid_argument on an unknown name.
Alg parse_alg(const std::string& name);
bool is_approx(Alg alg);

// 2^61 - 1: large enough for q >= T(T-1)D + 1 on every grid cell up to
// T = 40, D = 2^32.
inline constexpr std::uint64_t kDefaultQ = (std::uint64_t{1} << 61) - 1;

/// T distinct exponents uniform in [0, D), sorted. Throws if T > D.
std::vector<BigInt> random_exponents(std::uint64_t terms, const BigInt& degree_bound, Rng& rng);

/// Exactly T terms, nonzero uniform coefficients. Unless unsafe_q, throws
/// std::invalid_argument when q < T(T-1)D + 1.
SparsePoly<Fq> gen_ff(const PrimeField& field, std::uint64_t terms, const BigInt& degree_bound,
                      std::uint64_t seed, bool unsafe_q = false);

/// Exactly T terms with uniform phases; magnitudes uniform in [delta sqrt(T), 1]
/// before normalizing to ||f|| = 1, so every |c| >= delta.
/// Throws if delta > 1/sqrt(T).
SparsePoly<Complex> gen_approx(std::uint64_t terms, const BigInt& degree_bound, double delta,
                               std::uint64_t seed);

struct CoeffErrors {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double norm = 0.0;  // ||g - f|| / ||f||
};

/// Per-coefficient |g_i - f_i| / ||f|| over the union of both supports.
CoeffErrors coefficient_errors(const SparsePoly<Complex>& f, const SparsePoly<Complex>& g);

struct BenchRecord {
  std::string alg;
  std::uint64_t terms = 0;
  std::uint64_t log2d = 0;
  std::optional<std::uint64_t> q;  // finite-field runs
  std::optional<double> eps;       // approximate runs
  std::optional<double> delta;
  std::uint64_t seed = 0;
  bool success = false;
  std::uint64_t probes = 0;
  std::uint64_t max_p = 0;
  double wall_ms = 0.0;
  std::optional<double> err_mean;
  std::optional<double> err_median;
  std::optional<double> err_max;
  std::optional<double> err_norm;
  std::optional<bool> within_bound;  // ||g - f|| <= 2 eps ||f||
  std::string reason;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// One JSON object, no trailing newline. Absent optionals serialize as null.
std::string to_json_line(const BenchRecord& r);
/// Throws std::invalid_argument on malformed input.
BenchRecord parse_record(const std::string& line);

struct BenchCell {
  Alg alg = Alg::alg1;
  std::uint64_t terms = 10;
  std::uint64_t log2d = 12;
  std::uint64_t trials = 1;
  double eps = 0.0;     // approx only
  double delta = 0.01;  // approx only
};

struct Suite {
  std::vector<BenchCell> cells;
  std::uint64_t q = kDefaultQ;
  double mu = 0.1;
  std::uint64_t seed = 1;
  bool unsafe_q = false;
  unsigned jobs = 1;
  std::uint64_t lv_iteration_cap = 64;
};

/// Reads {"q":..,"mu":..,"seed":..,"cells":[{"alg":..,"T":..,"log2D":..,
/// "trials":..,"eps":..,"delta":..}]}; every key but "cells" is optional.
Suite parse_suite(const std::string& json_text);

/// Cartesian product of the given lists.
std::vector<BenchCell> grid(const std::vector<Alg>& algs, const std::vector<std::uint64_t>& terms,
                            const std::vector<std::uint64_t>& log2ds,
                            const std::vector<double>& eps, double delta, std::uint64_t trials);

/// Seed of trial `trial` of cell `cell`; independent of the worker count.
std::uint64_t trial_seed(std::uint64_t suite_seed, std::size_t cell, std::uint64_t trial);

/// Runs one trial. Instance generation is excluded from wall_ms.
BenchRecord run_trial(const BenchCell& cell, const Suite& suite, std::uint64_t seed);

struct BenchOutcome {
  std::vector<BenchRecord> records;  // ordered by (cell, trial)
  bool all_ok = true;  // every verify run succeeded, every approx run met its bound
};

/// Calls sink on each record in (cell, trial) order.
BenchOutcome run_bench(const Suite& suite,
                       const std::function<void(const BenchRecord&)>& sink = {});

struct SummaryRow {
  std::string alg;
  std::uint64_t terms = 0;
  std::uint64_t log2d = 0;
  std::optional<double> eps;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double median_wall_ms = 0.0;
  double mean_probes = 0.0;
  std::uint64_t max_p = 0;
  std::optional<double> err_mean;    // mean of per-trial means
  std::optional<double> err_median;  // median of per-trial medians
  std::optional<double> err_max;     // max of per-trial maxima
};

/// Groups by (alg, T, log2D, eps) in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);
std::string format_table(const std::vector<SummaryRow>& rows);
std::string summary_json(const std::vector<SummaryRow>& rows);

}  // namespace sparsediv::bench
