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

#include "sparsediv/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sparsediv/apinterp.hpp"
#include "sparsediv/blackbox.hpp"
#include "sparsediv/ffinterp.hpp"

namespace sparsediv::bench {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kAlgNames[] = {"alg1", "alg1pp", "gsmc", "verify", "approx"};

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

BigInt pow2(std::uint64_t bits) {
  BigInt d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, bits);
  return d;
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

std::string to_string(Alg alg) { return kAlgNames[static_cast<int>(alg)]; }

Alg parse_alg(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kAlgNames[i]) return static_cast<Alg>(i);
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

bool is_approx(Alg alg) { return alg == Alg::approx; }

std::vector<BigInt> random_exponents(std::uint64_t terms, const BigInt& degree_bound, Rng& rng) {
  if (degree_bound < terms) throw std::invalid_argument("random_exponents: T exceeds D");
  std::vector<BigInt> out;
  if (degree_bound <= 4 * terms) {
    // Small range: partial shuffle of all exponents.
    const std::uint64_t d = degree_bound.get_ui();
    std::vector<std::uint64_t> all(d);
    for (std::uint64_t i = 0; i < d; ++i) all[i] = i;
    for (std::uint64_t i = 0; i < terms; ++i) {
      std::swap(all[i], all[std::uniform_int_distribution<std::uint64_t>(i, d - 1)(rng)]);
      out.push_back(BigInt(static_cast<unsigned long>(all[i])));
    }
  } else {
    std::set<BigInt> seen;
    while (seen.size() < terms) seen.insert(uniform_below(degree_bound, rng));
    out.assign(seen.begin(), seen.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparsePoly<Fq> gen_ff(const PrimeField& field, std::uint64_t terms, const BigInt& degree_bound,
                      std::uint64_t seed, bool unsafe_q) {
  if (!unsafe_q) require_large_field(field, terms, degree_bound);
  Rng rng(seed);
  std::vector<Term<Fq>> out;
  for (BigInt& e : random_exponents(terms, degree_bound, rng)) {
    out.push_back({field.random_nonzero(rng), std::move(e)});
  }
  return SparsePoly<Fq>(std::move(out));
}

SparsePoly<Complex> gen_approx(std::uint64_t terms, const BigInt& degree_bound, double delta,
                               std::uint64_t seed) {
  const double floor = delta * std::sqrt(static_cast<double>(terms));
  if (floor > 1.0) throw std::invalid_argument("gen_approx: need delta <= 1/sqrt(T)");
  Rng rng(seed);
  std::vector<Term<Complex>> out;
  std::uniform_real_distribution<double> mag(floor, 1.0);
  std::uniform_real_distribution<double> turn(0.0, 1.0);
  double norm = 0.0;
  for (BigInt& e : random_exponents(terms, degree_bound, rng)) {
    const Complex c = std::polar(mag(rng), 2.0 * std::numbers::pi * turn(rng));
    norm += std::norm(c);
    out.push_back({c, std::move(e)});
  }
  norm = std::sqrt(norm);
  for (auto& t : out) t.coeff /= norm;
  return SparsePoly<Complex>(std::move(out));
}

CoeffErrors coefficient_errors(const SparsePoly<Complex>& f, const SparsePoly<Complex>& g) {
  std::map<BigInt, Complex> diff;
  for (const auto& t : f.terms()) diff[t.exp] += t.coeff;
  for (const auto& t : g.terms()) diff[t.exp] -= t.coeff;
  const double fn = norm2(f);
  const double scale = fn > 0.0 ? fn : 1.0;
  std::vector<double> errs;
  double sq = 0.0;
  for (const auto& [e, d] : diff) {
    errs.push_back(std::abs(d) / scale);
    sq += std::norm(d);
  }
  CoeffErrors out;
  if (errs.empty()) return out;
  double sum = 0.0;
  for (double x : errs) sum += x;
  out.mean = sum / static_cast<double>(errs.size());
  out.median = median_of(errs);
  out.max = *std::max_element(errs.begin(), errs.end());
  out.norm = std::sqrt(sq) / scale;
  return out;
}

std::string to_json_line(const BenchRecord& r) {
  json j;
  j["alg"] = r.alg;
  j["T"] = r.terms;
  j["log2D"] = r.log2d;
  j["q"] = opt(r.q);
  j["eps"] = opt(r.eps);
  j["delta"] = opt(r.delta);
  j["seed"] = r.seed;
  j["success"] = r.success;
  j["probes"] = r.probes;
  j["max_p"] = r.max_p;
  j["wall_ms"] = r.wall_ms;
  j["err_mean"] = opt(r.err_mean);
  j["err_median"] = opt(r.err_median);
  j["err_max"] = opt(r.err_max);
  j["err_norm"] = opt(r.err_norm);
  j["within_bound"] = opt(r.within_bound);
  j["reason"] = r.reason;
  return j.dump();
}

BenchRecord parse_record(const std::string& line) {
  try {
    const json j = json::parse(line);
    BenchRecord r;
    r.alg = j.at("alg").get<std::string>();
    r.terms = j.at("T").get<std::uint64_t>();
    r.log2d = j.at("log2D").get<std::uint64_t>();
    r.q = get_opt<std::uint64_t>(j, "q");
    r.eps = get_opt<double>(j, "eps");
    r.delta = get_opt<double>(j, "delta");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.success = j.at("success").get<bool>();
    r.probes = j.at("probes").get<std::uint64_t>();
    r.max_p = j.at("max_p").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.err_mean = get_opt<double>(j, "err_mean");
    r.err_median = get_opt<double>(j, "err_median");
    r.err_max = get_opt<double>(j, "err_max");
    r.err_norm = get_opt<double>(j, "err_norm");
    r.within_bound = get_opt<bool>(j, "within_bound");
    r.reason = j.value("reason", "");
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad record: ") + e.what());
  }
}

Suite parse_suite(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    Suite s;
    s.q = j.value("q", s.q);
    s.mu = j.value("mu", s.mu);
    s.seed = j.value("seed", s.seed);
    s.unsafe_q = j.value("unsafe_q", s.unsafe_q);
    s.jobs = j.value("jobs", s.jobs);
    for (const json& c : j.at("cells")) {
      BenchCell cell;
      cell.alg = parse_alg(c.at("alg").get<std::string>());
      cell.terms = c.at("T").get<std::uint64_t>();
      cell.log2d = c.at("log2D").get<std::uint64_t>();
      cell.trials = c.value("trials", cell.trials);
      cell.eps = c.value("eps", cell.eps);
      cell.delta = c.value("delta", cell.delta);
      s.cells.push_back(cell);
    }
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad suite: ") + e.what());
  }
}

std::vector<BenchCell> grid(const std::vector<Alg>& algs, const std::vector<std::uint64_t>& terms,
                            const std::vector<std::uint64_t>& log2ds,
                            const std::vector<double>& eps, double delta, std::uint64_t trials) {
  std::vector<BenchCell> out;
  for (Alg a : algs) {
    for (std::uint64_t t : terms) {
      for (std::uint64_t l : log2ds) {
        if (is_approx(a)) {
          for (double e : eps) out.push_back({a, t, l, trials, e, delta});
        } else {
          out.push_back({a, t, l, trials, 0.0, delta});
        }
      }
    }
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t suite_seed, std::size_t cell, std::uint64_t trial) {
  return mix64(mix64(suite_seed) ^ mix64((static_cast<std::uint64_t>(cell) << 32) + trial + 1));
}

BenchRecord run_trial(const BenchCell& cell, const Suite& suite, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  BenchRecord r;
  r.alg = to_string(cell.alg);
  r.terms = cell.terms;
  r.log2d = cell.log2d;
  r.seed = seed;
  const BigInt D = pow2(cell.log2d);
  Rng rng(mix64(seed + 1));
  try {
    if (is_approx(cell.alg)) {
      r.eps = cell.eps;
      r.delta = cell.delta;
      const SparsePoly<Complex> f = gen_approx(cell.terms, D, cell.delta, seed);
      const EpsApproxBox box(f, cell.eps, mix64(seed + 2));
      ApproxConfig cfg;
      cfg.terms = cell.terms;
      cfg.degree_bound = D;
      cfg.eps = cell.eps;
      cfg.delta = cell.delta;
      cfg.mu = suite.mu;
      const auto t0 = Clock::now();
      const ApproxResult res = approx_interpolate(box, cfg, rng);
      r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      r.success = res.ok();
      r.reason = res.reason;
      r.probes = res.stats.probes;
      r.max_p = res.stats.max_p;
      if (res.ok()) {
        const CoeffErrors err = coefficient_errors(f, res.poly);
        r.err_mean = err.mean;
        r.err_median = err.median;
        r.err_max = err.max;
        r.err_norm = err.norm;
        // At eps = 0 only floating-point error remains; it is folded into eps.
        const double bound = 2.0 * (cell.eps > 0.0 ? cell.eps : kRoundoff);
        r.within_bound = err.norm <= bound;
      } else {
        r.within_bound = false;
      }
      return r;
    }

    r.q = suite.q;
    const PrimeField F(suite.q);
    const SparsePoly<Fq> f = gen_ff(F, cell.terms, D, seed, suite.unsafe_q);
    const SparseFqBackend box(F, f);
    InterpConfig cfg;
    cfg.terms = cell.terms;
    cfg.degree_bound = D;
    cfg.mu = suite.mu;
    cfg.check_field = !suite.unsafe_q;
    const auto t0 = Clock::now();
    InterpResult res;
    switch (cell.alg) {
      case Alg::alg1:
        res = interpolate_mc(box, cfg, rng);
        break;
      case Alg::alg1pp:
        res = interpolate_adaptive(box, cfg, rng);
        break;
      case Alg::gsmc:
        res = gs_interpolate_mc(box, cfg, rng);
        break;
      case Alg::verify:
        res = interpolate_lv(box, cfg, rng, suite.lv_iteration_cap);
        break;
      case Alg::approx:
        break;
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    r.success = res.ok() && res.poly == f;
    r.reason = res.ok() && !r.success ? "wrong-result" : res.reason;
    r.probes = res.stats.probes;
    r.max_p = res.stats.max_p;
  } catch (const std::exception& e) {
    r.success = false;
    r.reason = e.what();
    if (is_approx(cell.alg)) r.within_bound = false;
  }
  return r;
}

BenchOutcome run_bench(const Suite& suite, const std::function<void(const BenchRecord&)>& sink) {
  struct Job {
    std::size_t cell;
    std::uint64_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < suite.cells.size(); ++c) {
    for (std::uint64_t t = 0; t < suite.cells[c].trials; ++t) jobs.push_back({c, t});
  }
  auto run = [&suite, &jobs](std::size_t i) {
    const Job& j = jobs[i];
    return run_trial(suite.cells[j.cell], suite, trial_seed(suite.seed, j.cell, j.trial));
  };

  BenchOutcome out;
  out.records.resize(jobs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(suite.jobs, static_cast<unsigned>(jobs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      out.records[i] = run(i);
      if (sink) sink(out.records[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) out.records[i] = run(i);
      });
    }
    for (auto& th : pool) th.join();
    if (sink) {
      for (const auto& r : out.records) sink(r);
    }
  }
  for (const auto& r : out.records) {
    if (r.alg == "verify" && !r.success) out.all_ok = false;
    if (r.alg == "approx" && !r.within_bound.value_or(false)) out.all_ok = false;
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<const BenchRecord*>> members;
  for (const auto& r : records) {
    auto it = std::find_if(rows.begin(), rows.end(), [&r](const SummaryRow& s) {
      return s.alg == r.alg && s.terms == r.terms && s.log2d == r.log2d && s.eps == r.eps;
    });
    if (it == rows.end()) {
      SummaryRow row;
      row.alg = r.alg;
      row.terms = r.terms;
      row.log2d = r.log2d;
      row.eps = r.eps;
      rows.push_back(std::move(row));
      members.emplace_back();
      it = rows.end() - 1;
    }
    members[static_cast<std::size_t>(it - rows.begin())].push_back(&r);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SummaryRow& s = rows[i];
    std::vector<double> wall;
    std::vector<double> means;
    std::vector<double> medians;
    std::vector<double> maxes;
    double probes = 0.0;
    for (const BenchRecord* r : members[i]) {
      ++s.trials;
      if (r->success) ++s.successes;
      wall.push_back(r->wall_ms);
      probes += static_cast<double>(r->probes);
      s.max_p = std::max(s.max_p, r->max_p);
      if (r->err_mean) means.push_back(*r->err_mean);
      if (r->err_median) medians.push_back(*r->err_median);
      if (r->err_max) maxes.push_back(*r->err_max);
    }
    s.median_wall_ms = median_of(wall);
    s.mean_probes = probes / static_cast<double>(s.trials);
    if (!means.empty()) {
      double sum = 0.0;
      for (double x : means) sum += x;
      s.err_mean = sum / static_cast<double>(means.size());
    }
    if (!medians.empty()) s.err_median = median_of(medians);
    if (!maxes.empty()) s.err_max = *std::max_element(maxes.begin(), maxes.end());
  }
  return rows;
}

std::string format_table(const std::vector<SummaryRow>& rows) {
  auto num = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", *v);
    return std::string(buf);
  };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-7s %4s %6s %9s %6s %7s %11s %9s %9s %10s %10s %10s\n", "alg",
                "T", "log2D", "eps", "trials", "ok", "wall_ms", "probes", "max_p", "err_mean",
                "err_median", "err_max");
  out += line;
  for (const auto& s : rows) {
    std::snprintf(line, sizeof line,
                  "%-7s %4llu %6llu %9s %6llu %7llu %11.3f %9.1f %9llu %10s %10s %10s\n",
                  s.alg.c_str(), static_cast<unsigned long long>(s.terms),
                  static_cast<unsigned long long>(s.log2d), num(s.eps).c_str(),
                  static_cast<unsigned long long>(s.trials),
                  static_cast<unsigned long long>(s.successes), s.median_wall_ms, s.mean_probes,
                  static_cast<unsigned long long>(s.max_p), num(s.err_mean).c_str(),
                  num(s.err_median).c_str(), num(s.err_max).c_str());
    out += line;
  }
  return out;
}

std::string summary_json(const std::vector<SummaryRow>& rows) {
  json arr = json::array();
  for (const auto& s : rows) {
    json j;
    j["alg"] = s.alg;
    j["T"] = s.terms;
    j["log2D"] = s.log2d;
    j["eps"] = opt(s.eps);
    j["trials"] = s.trials;
    j["successes"] = s.successes;
    j["median_wall_ms"] = s.median_wall_ms;
    j["mean_probes"] = s.mean_probes;
    j["max_p"] = s.max_p;
    j["err_mean"] = opt(s.err_mean);
    j["err_median"] = opt(s.err_median);
    j["err_max"] = opt(s.err_max);
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace sparsediv::bench
