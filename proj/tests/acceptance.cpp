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

// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits non-zero if any check fails. Usage: acceptance [check-name ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sparsediv/apinterp.hpp"
#include "sparsediv/bench.hpp"
#include "sparsediv/blackbox.hpp"
#include "sparsediv/ffinterp.hpp"
#include "sparsediv/fft.hpp"

namespace {

using namespace sparsediv;

const PrimeField kF61((std::uint64_t{1} << 61) - 1);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

BigInt pow2(unsigned bits) { return BigInt(1) << bits; }

InterpConfig ff_config(std::uint64_t terms, const BigInt& D, double mu) {
  InterpConfig cfg;
  cfg.terms = terms;
  cfg.degree_bound = D;
  cfg.mu = mu;
  return cfg;
}

// ---- finite fields

Outcome las_vegas_exact() {
  const std::uint64_t Ts[] = {1, 5, 10, 20};
  const unsigned Ls[] = {12, 16, 20, 32};
  Rng rng(101);
  int exact = 0;
  std::uint64_t max_iter = 0;
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t T = Ts[i % 4];
    const BigInt D = pow2(Ls[(i / 4) % 4]);
    const auto f = bench::gen_ff(kF61, T, D, 10000 + i);
    const SparseFqBackend box(kF61, f);
    const InterpResult r = interpolate_lv(box, ff_config(T, D, 0.5), rng);
    if (r.ok() && r.poly == f) ++exact;
    max_iter = std::max(max_iter, r.iterations);
  }
  return {exact == 200, fmt("%d/200 exact, max rounds %llu", exact, (unsigned long long)max_iter)};
}

// Monte Carlo success rate and exact probe accounting share their runs.
struct McStats {
  int exact = 0;
  int trials = 0;
  int budget_mismatch = 0;
  std::uint64_t main_loop = 0;
};

McStats run_mc(std::uint64_t T, const BigInt& D, double mu, int trials, std::uint64_t seed) {
  McStats s;
  Rng rng(seed);
  const std::uint64_t lambda = probe_lambda(T, D);
  s.main_loop = exponent_probe_budget(mu, D, lambda);
  for (int i = 0; i < trials; ++i) {
    const auto f = bench::gen_ff(kF61, T, D, seed * 1000 + i);
    const SparseFqBackend box(kF61, f);
    const InterpResult r = interpolate_mc(box, ff_config(T, D, mu), rng);
    ++s.trials;
    if (r.ok() && r.poly == f) ++s.exact;
    // Sparsity probes + diversification attempts + main loop, unless
    // diversification failed and the run stopped early.
    const std::uint64_t expected =
        sparsity_probe_budget(mu) + r.diversify_attempts + (r.reason == "not-diversified" ? 0 : s.main_loop);
    if (r.stats.probes != expected || box.stats().probes != expected) ++s.budget_mismatch;
  }
  return s;
}

McStats& mc_runs() {
  static McStats s = run_mc(10, pow2(16), 0.05, 100, 7);
  return s;
}

Outcome monte_carlo_rate() {
  const McStats& s = mc_runs();
  return {s.exact >= 90, fmt("%d/%d exact at mu=0.05 (T=10, D=2^16)", s.exact, s.trials)};
}

Outcome probe_budget() {
  const McStats& a = mc_runs();
  const McStats b = run_mc(10, pow2(20), 0.1, 50, 8);
  const bool example = b.main_loop == 15;
  return {a.budget_mismatch == 0 && b.budget_mismatch == 0 && example,
          fmt("%d+%d trials, %d mismatches; main loop for T=10, D=2^20, mu=0.1: %llu probes",
              a.trials, b.trials, a.budget_mismatch + b.budget_mismatch,
              (unsigned long long)b.main_loop)};
}

// Exhaustive oracle: p is bad iff it divides some pairwise exponent gap.
bool good_by_gaps(const std::vector<BigInt>& exps, std::uint64_t p) {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    for (std::size_t j = i + 1; j < exps.size(); ++j) {
      const BigInt gap = exps[j] - exps[i];
      if (mpz_divisible_ui_p(gap.get_mpz_t(), p)) return false;
    }
  }
  return true;
}

Outcome good_prime_density() {
  const std::uint64_t T = 10;
  const BigInt D = pow2(20);
  const std::uint64_t lambda = lambda_bound(T, D);
  const auto primes = primes_between(lambda, 2 * lambda);
  Rng rng(404);
  std::uint64_t good = 0;
  std::uint64_t total = 0;
  double worst = 1.0;
  int disagreements = 0;
  for (int i = 0; i < 100; ++i) {
    const auto exps = bench::random_exponents(T, D, rng);
    std::vector<Term<Fq>> terms;
    for (const auto& e : exps) terms.push_back({Fq{1}, e});
    const SparsePoly<Fq> f(terms);
    std::uint64_t g = 0;
    for (std::uint64_t p : primes) {
      const bool ok = good_by_gaps(exps, p);
      if (ok != is_good_prime(f, p)) ++disagreements;
      g += ok;
    }
    worst = std::min(worst, static_cast<double>(g) / static_cast<double>(primes.size()));
    good += g;
    total += primes.size();
  }
  const double frac = static_cast<double>(good) / static_cast<double>(total);
  return {frac >= 0.45 && disagreements == 0,
          fmt("good fraction %.4f over %llu primes in [%llu, %llu] x 100 sets (worst set %.3f)",
              frac, (unsigned long long)primes.size(), (unsigned long long)lambda,
              (unsigned long long)(2 * lambda), worst)};
}

Outcome diversification_rate() {
  // All-equal coefficients: diversity rests entirely on alpha. q is the least
  // prime meeting the size bound, the hardest admissible case.
  const std::uint64_t T = 5;
  const BigInt D = pow2(10);
  const std::uint64_t q = primes_from(T * (T - 1) * D.get_ui() + 1, 1).front();
  const PrimeField F(q);
  Rng rng(55);
  int diverse = 0;
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto exps = bench::random_exponents(T, D, rng);
    std::vector<Term<Fq>> terms;
    for (const auto& e : exps) terms.push_back({F.one(), e});
    const SparsePoly<Fq> f(terms);
    const Fq alpha = F.random_nonzero(rng);
    std::vector<Fq> vals;
    for (const auto& e : exps) vals.push_back(F.pow(alpha, e));
    std::sort(vals.begin(), vals.end(), [](Fq a, Fq b) { return a.v < b.v; });
    const bool ok = std::adjacent_find(vals.begin(), vals.end()) == vals.end();
    diverse += ok;
    // Cross-check the library's test on a good prime.
    std::uint64_t p = 1031;
    while (!is_good_prime(f, p)) p = primes_from(p + 1, 1).front();
    const SparseFqBackend box(F, f);
    if (try_diversifier(box, T, p, alpha).has_value() != ok) ++disagreements;
  }
  return {diverse >= 450 && disagreements == 0,
          fmt("%d/1000 diverse (q=%llu, T=5, D=2^10, equal coefficients)", diverse,
              (unsigned long long)q)};
}

Outcome verification_soundness() {
  const BigInt D = pow2(64);
  Rng rng(66);
  int caught = 0;
  std::uint64_t worst_witness = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t T = 2 + rng() % 6;
    // Gap g: product of the first k primes times a random factor, so every
    // prime dividing g sees all terms at one residue.
    BigInt g = 1;
    const std::size_t k = 1 + rng() % 15;
    for (std::uint64_t p : primes_from(2, k)) g *= static_cast<unsigned long>(p);
    const BigInt room = (D - 1) / (g * (T - 1));
    if (room > 1) g *= uniform_below(room, rng) + 1;
    const BigInt base = uniform_below(D - g * (T - 1), rng);
    // Coefficients sum to zero: those images vanish entirely.
    std::vector<Term<Fq>> terms;
    Fq sum = kF61.zero();
    for (std::uint64_t j = 0; j + 1 < T; ++j) {
      const Fq c = kF61.random_nonzero(rng);
      sum = kF61.add(sum, c);
      terms.push_back({c, base + g * static_cast<unsigned long>(j)});
    }
    if (is_zero(sum)) sum = kF61.one();  // keep the last coefficient nonzero
    terms.push_back({kF61.neg(sum), base + g * static_cast<unsigned long>(T - 1)});
    const SparseFqBackend box(kF61, SparsePoly<Fq>(terms));
    const VerifyResult v = verify_zero(box, T, D);
    if (v.verdict == ZeroTest::nonzero) ++caught;
    worst_witness = std::max(worst_witness, v.witness);
  }
  int exact_counts = 0;
  int zero_runs = 0;
  for (std::uint64_t T : {2u, 3u, 10u, 40u}) {
    for (unsigned bits : {4u, 16u, 32u, 64u}) {
      const SparseFqBackend zero(kF61, SparsePoly<Fq>());
      const VerifyResult v = verify_zero(zero, T, pow2(bits));
      ++zero_runs;
      if (v.verdict == ZeroTest::zero && v.probes == (T - 1) * bits) ++exact_counts;
    }
  }
  return {caught == 1000 && exact_counts == zero_runs,
          fmt("%d/1000 adversarial caught (largest witness p=%llu); zero: %d/%d exact probe counts",
              caught, (unsigned long long)worst_witness, exact_counts, zero_runs)};
}

// ---- approximate

Outcome approx_stability() {
  const double levels[] = {0.0, 1e-12, 1e-9, 1e-6};
  bench::Suite suite;
  suite.seed = 2024;
  for (double eps : levels) suite.cells.push_back({bench::Alg::approx, 50, 20, 10, eps, 0.01});
  const auto out = bench::run_bench(suite);
  const auto rows = bench::summarize(out.records);

  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    const double eps = *row.eps;
    int in_bound = 0;
    int ok = 0;
    for (const auto& r : out.records) {
      if (r.eps != row.eps || !r.success) continue;
      ++ok;
      in_bound += r.within_bound.value_or(false);
    }
    const bool max_ok = eps < 1e-12 || (row.err_max && *row.err_max <= 10 * eps);
    pass = pass && ok > 0 && in_bound == ok && max_ok;
    detail += fmt("\n      eps=%-7.0e ok %d/10, in bound %d/%d, mean %.3e median %.3e max %.3e", eps,
                  ok, in_bound, ok, row.err_mean.value_or(NAN), row.err_median.value_or(NAN),
                  row.err_max.value_or(NAN));
  }

  // Timing order on the large finite-field grid.
  bench::Suite grid;
  grid.seed = 99;
  grid.cells = bench::grid({bench::Alg::alg1pp, bench::Alg::gsmc}, {20, 30, 40}, {24, 28, 32}, {}, 0.01, 5);
  const auto timed = bench::summarize(bench::run_bench(grid).records);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::map<std::string, double>> med;
  for (const auto& row : timed) med[{row.terms, row.log2d}][row.alg] = row.median_wall_ms;
  int ordered = 0;
  for (const auto& [cell, m] : med) {
    const bool o = m.at("alg1pp") <= m.at("gsmc");
    ordered += o;
    detail += fmt("\n      T=%llu log2D=%llu median ms: alg1pp %.3f gsmc %.3f%s",
                  (unsigned long long)cell.first, (unsigned long long)cell.second, m.at("alg1pp"),
                  m.at("gsmc"), o ? "" : "  <- out of order");
  }
  pass = pass && ordered == static_cast<int>(med.size());
  return {pass, fmt("4 noise levels x 10 trials, T=50, D=2^20; alg1pp <= gsmc in %d/%zu cells", ordered,
                    med.size()) + detail};
}

Outcome fft_properties() {
  Rng rng(8);
  double worst_roundtrip = 0.0;
  for (std::size_t p : {23u, 1009u, 65519u, 65521u, 65537u, 65539u, 65543u}) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(p);
    for (auto& x : v) x = {g(rng), g(rng)};
    const auto back = interpolate_from_roots(evaluate_on_roots(v));
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      num += std::norm(back[i] - v[i]);
      den += std::norm(v[i]);
    }
    worst_roundtrip = std::max(worst_roundtrip, std::sqrt(num / den));
  }
  double worst_parseval = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = bench::gen_approx(50, pow2(20), 0.01, seed);
    const EpsApproxBox box(f, 0.0, seed);
    const PrimeRange range(lambda_bound(50, pow2(20)));
    std::uint64_t p = random_prime(range, rng);
    while (!is_good_prime(f, p)) p = random_prime(range, rng);
    double s = 0.0;
    for (const Complex& v : box.evaluate_circle(p, RootOfUnity{})) s += std::norm(v);
    const double fn2 = norm2(f) * norm2(f);
    worst_parseval = std::max(worst_parseval, std::abs(s / static_cast<double>(p) - fn2) / fn2);
  }
  return {worst_roundtrip <= 1e-12 && worst_parseval <= 1e-10,
          fmt("roundtrip max rel %.2e, Parseval max rel %.2e", worst_roundtrip, worst_parseval)};
}

// ---- oracles and multivariate

// Wraps a box and checks each image against a dense reduction of f.
class DenseCheckBox final : public FqBlackBox {
 public:
  DenseCheckBox(const SparseFqBackend& inner, const SparsePoly<Fq>& f)
      : FqBlackBox(inner.field(), inner.counter()), inner_(inner) {
    for (const auto& t : f.terms()) {
      const std::uint64_t e = t.exp.get_ui();
      if (dense_.size() <= e) dense_.resize(e + 1);
      dense_[e] = t.coeff;
    }
  }

  DenseImage<Fq> probe(std::uint64_t p, const Fq& alpha) const override {
    DenseImage<Fq> img = inner_.probe(p, alpha);
    const PrimeField& F = field();
    std::vector<Fq> ref(p);
    Fq power = F.one();
    for (std::size_t i = 0; i < dense_.size(); ++i) {
      ref[i % p] = F.add(ref[i % p], F.mul(dense_[i], power));
      power = F.mul(power, alpha);
    }
    ++checked_;
    if (!(img == DenseImage<Fq>(p, ref))) ++mismatched_;
    return img;
  }

  std::uint64_t checked() const { return checked_; }
  std::uint64_t mismatched() const { return mismatched_; }

 private:
  const SparseFqBackend& inner_;
  std::vector<Fq> dense_;
  mutable std::uint64_t checked_ = 0;
  mutable std::uint64_t mismatched_ = 0;
};

Outcome oracle_equivalence() {
  Rng rng(9);
  std::uint64_t checked = 0;
  std::uint64_t mismatched = 0;
  int exact = 0;
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t T = 1 + rng() % 5;
    const BigInt D = 8 + rng() % 505;
    const auto f = bench::gen_ff(kF61, T, D, 500 + i);
    const SparseFqBackend box(kF61, f);
    const DenseCheckBox check(box, f);
    const InterpResult r = interpolate_lv(check, ff_config(T, D, 0.5), rng);
    exact += r.ok() && r.poly == f;
    checked += check.checked();
    mismatched += check.mismatched();
  }
  return {mismatched == 0 && checked > 0 && exact == 50,
          fmt("%llu probe images checked, %llu mismatches; %d/50 recovered",
              (unsigned long long)checked, (unsigned long long)mismatched, exact)};
}

Outcome kronecker_roundtrip() {
  Rng rng(10);
  int exact = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 4;
    const std::uint64_t d = 2 + rng() % 31;
    BigInt D;
    mpz_ui_pow_ui(D.get_mpz_t(), d, n);
    const std::uint64_t T = 1 + rng() % std::min<std::uint64_t>(12, D.get_ui());
    const auto m = kronecker_unpack(bench::gen_ff(kF61, T, D, 900 + i), d, n);
    const SparsePoly<Fq> packed = kronecker_pack(m, d);
    const SparseFqBackend box(kF61, packed);
    const InterpResult r = interpolate_lv(box, ff_config(T, std::max(D, BigInt(2)), 0.5), rng);
    if (r.ok() && kronecker_unpack(r.poly, d, n) == m) ++exact;
  }
  return {exact == 100, fmt("%d/100 multivariate round trips exact", exact)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"las_vegas_exact", las_vegas_exact},
      {"monte_carlo_success_rate", monte_carlo_rate},
      {"monte_carlo_probe_count", probe_budget},
      {"good_prime_density", good_prime_density},
      {"diversification_rate", diversification_rate},
      {"verification_soundness", verification_soundness},
      {"approximate_stability_and_timing_order", approx_stability},
      {"fft_unitarity_and_parseval", fft_properties},
      {"probe_images_match_dense_oracle", oracle_equivalence},
      {"kronecker_roundtrip", kronecker_roundtrip},
  };
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, run] : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-40s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), s, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
