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

// sparsediv: generate instances, interpolate, zero-test and benchmark.
//
//   sparsediv gen --terms 10 --degbits 20 --seed 7 --out f.poly
//   sparsediv interp --in f.poly --alg verify
//   sparsediv verify --in f.poly --against g.poly
//   sparsediv bench --alg alg1pp,gsmc --terms 20 --degbits 24 --trials 5 > runs.jsonl
//   sparsediv report --in runs.jsonl

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsediv/apinterp.hpp"
#include "sparsediv/bench.hpp"
#include "sparsediv/blackbox.hpp"
#include "sparsediv/ffinterp.hpp"
#include "sparsediv/polyio.hpp"

namespace {

using namespace sparsediv;
using json = nlohmann::ordered_json;

BigInt pow2(std::uint64_t bits) {
  BigInt d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, bits);
  return d;
}

// Smallest power of two strictly above the degree.
std::uint64_t degbits_for(const BigInt& degree) {
  return std::max<std::uint64_t>(1, mpz_sizeinbase(BigInt(degree + 1).get_mpz_t(), 2));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string poly_text(const PolyFile& file) {
  std::ostringstream s;
  write_poly(s, file);
  return s.str();
}

json stats_json(const ProbeStats& s) {
  return json{{"probes", s.probes}, {"max_p", s.max_p}, {"evals", s.evals}};
}

// ---- gen

struct GenArgs {
  std::string kind = "ff";
  std::uint64_t terms = 10;
  std::uint64_t degbits = 20;
  std::uint64_t q = bench::kDefaultQ;
  std::uint64_t seed = 1;
  double delta = 0.01;
  bool unsafe_q = false;
  std::size_t vars = 0;
  std::uint64_t var_degree = 32;
  std::string out;
};

int run_gen(const GenArgs& a) {
  if (a.kind == "approx") {
    emit(a.out, poly_text(make_file(bench::gen_approx(a.terms, pow2(a.degbits), a.delta, a.seed))));
    return 0;
  }
  if (a.kind != "ff") throw CLI::ValidationError("--kind", "must be ff or approx");
  const PrimeField F(a.q);
  if (a.vars == 0) {
    emit(a.out, poly_text(make_file(F, bench::gen_ff(F, a.terms, pow2(a.degbits), a.seed, a.unsafe_q))));
    return 0;
  }
  BigInt D;
  mpz_ui_pow_ui(D.get_mpz_t(), a.var_degree, a.vars);
  const SparsePoly<Fq> packed = bench::gen_ff(F, a.terms, D, a.seed, a.unsafe_q);
  PolyFile file{a.q, VarsHeader{a.vars, a.var_degree}, kronecker_unpack(packed, a.var_degree, a.vars)};
  emit(a.out, poly_text(file));
  return 0;
}

// ---- interp

struct InterpArgs {
  std::string in;
  std::string slp;
  std::string alg;
  std::uint64_t terms = 0;
  std::uint64_t degbits = 0;
  std::uint64_t q = bench::kDefaultQ;
  double mu = 0.1;
  double eps = 0.0;
  std::string delta = "0.01";
  std::uint64_t seed = 1;
  std::uint64_t max_iterations = 64;
  bool unsafe_q = false;
  bool as_json = false;
  std::string out;
};

InterpResult run_ff(bench::Alg alg, const FqBlackBox& box, const InterpConfig& cfg, Rng& rng,
                    std::uint64_t max_iterations) {
  switch (alg) {
    case bench::Alg::alg1:
      return interpolate_mc(box, cfg, rng);
    case bench::Alg::alg1pp:
      return interpolate_adaptive(box, cfg, rng);
    case bench::Alg::gsmc:
      return gs_interpolate_mc(box, cfg, rng);
    case bench::Alg::verify:
      return interpolate_lv(box, cfg, rng, max_iterations);
    case bench::Alg::approx:
      break;
  }
  throw CLI::ValidationError("--alg", "approx needs a complex input");
}

int report_ff(const InterpArgs& a, const InterpResult& r, const PolyFile& result,
              std::optional<bool> matches, double wall_ms) {
  if (a.as_json) {
    json j{{"status", r.ok() ? "ok" : "failed"}, {"reason", r.reason},
           {"stats", stats_json(r.stats)}, {"diversify_attempts", r.diversify_attempts},
           {"iterations", r.iterations}, {"wall_ms", wall_ms}};
    j["matches_input"] = matches ? json(*matches) : json(nullptr);
    j["poly"] = r.ok() ? json(poly_text(result)) : json(nullptr);
    std::cout << j.dump() << '\n';
    if (r.ok() && !a.out.empty()) emit(a.out, poly_text(result));
  } else {
    if (r.ok()) emit(a.out, poly_text(result));
    std::cerr << (r.ok() ? "ok" : "FAILED(" + r.reason + ")") << " probes=" << r.stats.probes
              << " max_p=" << r.stats.max_p << " wall_ms=" << wall_ms;
    if (matches) std::cerr << " matches_input=" << (*matches ? "yes" : "no");
    std::cerr << '\n';
  }
  return r.ok() ? 0 : 1;
}

int run_interp(const InterpArgs& a) {
  using Clock = std::chrono::steady_clock;
  Rng rng(a.seed);

  if (!a.slp.empty()) {
    if (a.terms == 0 || a.degbits == 0) {
      throw CLI::ValidationError("--slp", "needs --terms and --degbits");
    }
    const PrimeField F(a.q);
    const ExpressionFqBackend box = ExpressionFqBackend::parse(F, read_text(a.slp));
    InterpConfig cfg{a.terms, pow2(a.degbits), a.mu, !a.unsafe_q};
    const auto t0 = Clock::now();
    const InterpResult r = run_ff(bench::parse_alg(a.alg.empty() ? "verify" : a.alg), box, cfg, rng,
                                  a.max_iterations);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return report_ff(a, r, make_file(F, r.poly), std::nullopt, ms);
  }

  const PolyFile file = read_poly_file(a.in);
  if (const auto* f = std::get_if<SparsePoly<Fq>>(&file.poly)) {
    const PrimeField F(*file.q);
    const SparseFqBackend box(F, *f);
    InterpConfig cfg{a.terms ? a.terms : std::max<std::uint64_t>(1, f->sparsity()),
                     pow2(a.degbits ? a.degbits : degbits_for(f->degree())), a.mu, !a.unsafe_q};
    const auto t0 = Clock::now();
    const InterpResult r = run_ff(bench::parse_alg(a.alg.empty() ? "verify" : a.alg), box, cfg, rng,
                                  a.max_iterations);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return report_ff(a, r, make_file(F, r.poly), r.ok() && r.poly == *f, ms);
  }
  if (const auto* f = std::get_if<MultiSparsePoly<Fq>>(&file.poly)) {
    // Kronecker: x_j -> x^(d^(j-1)), degree < d^n.
    const PrimeField F(*file.q);
    const std::uint64_t d = file.vars->degree;
    const std::size_t n = file.vars->nvars;
    const SparsePoly<Fq> packed = kronecker_pack(*f, d);
    const SparseFqBackend box(F, packed);
    BigInt D;
    mpz_ui_pow_ui(D.get_mpz_t(), d, n);
    InterpConfig cfg{a.terms ? a.terms : std::max<std::uint64_t>(1, f->sparsity()), D, a.mu,
                     !a.unsafe_q};
    const auto t0 = Clock::now();
    const InterpResult r = run_ff(bench::parse_alg(a.alg.empty() ? "verify" : a.alg), box, cfg, rng,
                                  a.max_iterations);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    PolyFile result{file.q, file.vars, MultiSparsePoly<Fq>(n)};
    std::optional<bool> matches;
    if (r.ok()) {
      auto unpacked = kronecker_unpack(r.poly, d, n);
      matches = unpacked == *f;
      result.poly = std::move(unpacked);
    }
    return report_ff(a, r, result, matches, ms);
  }
  if (const auto* f = std::get_if<SparsePoly<Complex>>(&file.poly)) {
    if (!a.alg.empty() && a.alg != "approx") {
      throw CLI::ValidationError("--alg", "complex input supports only approx");
    }
    const EpsApproxBox box(*f, a.eps, mix64(a.seed));
    ApproxConfig cfg;
    cfg.terms = a.terms ? a.terms : std::max<std::uint64_t>(1, f->sparsity());
    cfg.degree_bound = pow2(a.degbits ? a.degbits : degbits_for(f->degree()));
    cfg.eps = a.eps;
    cfg.mu = a.mu;
    if (a.delta == "auto") {
      // Heuristic: smallest coefficient above the noise floor of one image.
      cfg.delta = 1.0;
      cfg.delta = suggest_delta(box, cfg, rng);
    } else {
      cfg.delta = std::stod(a.delta);
    }
    const auto t0 = Clock::now();
    const ApproxResult r = approx_interpolate(box, cfg, rng);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    const bench::CoeffErrors err = bench::coefficient_errors(*f, r.poly);
    if (a.as_json) {
      json j{{"status", r.ok() ? "ok" : "failed"}, {"reason", r.reason},
             {"stats", stats_json(r.stats)}, {"sigma", r.sigma}, {"delta", cfg.delta},
             {"wall_ms", ms}};
      j["err_norm"] = r.ok() ? json(err.norm) : json(nullptr);
      j["err_max"] = r.ok() ? json(err.max) : json(nullptr);
      j["poly"] = r.ok() ? json(poly_text(make_file(r.poly))) : json(nullptr);
      std::cout << j.dump() << '\n';
      if (r.ok() && !a.out.empty()) emit(a.out, poly_text(make_file(r.poly)));
    } else {
      if (r.ok()) emit(a.out, poly_text(make_file(r.poly)));
      std::cerr << (r.ok() ? "ok" : "FAILED(" + r.reason + ")") << " probes=" << r.stats.probes
                << " evals=" << r.stats.evals << " sigma=" << r.sigma << " delta=" << cfg.delta;
      if (r.ok()) std::cerr << " err_norm=" << err.norm << " err_max=" << err.max;
      std::cerr << '\n';
    }
    return r.ok() ? 0 : 1;
  }
  throw CLI::ValidationError("--in", "multivariate complex input is not supported");
}

// ---- verify

struct VerifyArgs {
  std::string in;
  std::string against;
  std::uint64_t terms = 0;
  std::uint64_t degbits = 0;
  bool as_json = false;
};

int run_verify(const VerifyArgs& a) {
  const PolyFile ff = read_poly_file(a.in);
  const auto* f = std::get_if<SparsePoly<Fq>>(&ff.poly);
  if (!f) throw CLI::ValidationError("--in", "verify needs a univariate finite-field polynomial");
  const PrimeField F(*ff.q);
  SparsePoly<Fq> g;
  if (!a.against.empty()) {
    const PolyFile gf = read_poly_file(a.against);
    const auto* gp = std::get_if<SparsePoly<Fq>>(&gf.poly);
    if (!gp || gf.q != ff.q) throw CLI::ValidationError("--against", "needs the same field as --in");
    g = *gp;
  }
  const SparseFqBackend box(F, *f);
  const DifferenceFqBox diff(box, g);
  const BigInt top = std::max(f->degree(), g.degree());
  const std::uint64_t terms = a.terms ? a.terms : std::max<std::uint64_t>(1, f->sparsity() + g.sparsity());
  const VerifyResult v = verify_zero(diff, terms, pow2(a.degbits ? a.degbits : degbits_for(top)));
  const char* verdict = v.verdict == ZeroTest::zero ? "ZERO" : "NONZERO";
  if (a.as_json) {
    json j{{"verdict", verdict}, {"probes", v.probes}};
    j["witness"] = v.verdict == ZeroTest::nonzero ? json(v.witness) : json(nullptr);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << verdict << " probes=" << v.probes;
    if (v.verdict == ZeroTest::nonzero) std::cout << " witness_p=" << v.witness;
    std::cout << '\n';
  }
  return v.verdict == ZeroTest::zero ? 0 : 1;
}

// ---- bench

struct BenchArgs {
  std::string suite;
  std::vector<std::string> algs{"alg1", "alg1pp", "gsmc", "verify"};
  std::vector<std::uint64_t> terms{10};
  std::vector<std::uint64_t> degbits{12};
  std::vector<double> eps{0.0};
  double delta = 0.01;
  std::uint64_t trials = 5;
  std::uint64_t q = bench::kDefaultQ;
  double mu = 0.1;
  std::uint64_t seed = 1;
  bool unsafe_q = false;
  unsigned jobs = 1;
  std::string out;
  std::string summary;
  bool as_json = false;
};

int run_bench_cmd(const BenchArgs& a) {
  bench::Suite suite;
  if (!a.suite.empty()) {
    suite = bench::parse_suite(read_text(a.suite));
  } else {
    std::vector<bench::Alg> algs;
    for (const auto& s : a.algs) algs.push_back(bench::parse_alg(s));
    suite.cells = bench::grid(algs, a.terms, a.degbits, a.eps, a.delta, a.trials);
    suite.q = a.q;
    suite.mu = a.mu;
    suite.seed = a.seed;
    suite.unsafe_q = a.unsafe_q;
  }
  suite.jobs = a.jobs;

  std::ofstream file;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  std::ostream& records = file.is_open() ? file : std::cout;
  const bench::BenchOutcome outcome = bench::run_bench(suite, [&records](const bench::BenchRecord& r) {
    records << bench::to_json_line(r) << '\n' << std::flush;
  });

  const auto rows = bench::summarize(outcome.records);
  const std::string text = a.as_json ? bench::summary_json(rows) + "\n" : bench::format_table(rows);
  if (a.summary.empty()) {
    std::cerr << text;
  } else {
    std::ofstream s(a.summary);
    s << text;
  }
  return outcome.all_ok ? 0 : 1;
}

// ---- report

struct ReportArgs {
  std::string in;
  std::string out;
  bool as_json = false;
};

int run_report(const ReportArgs& a) {
  std::ifstream file;
  if (!a.in.empty() && a.in != "-") {
    file.open(a.in);
    if (!file) throw std::runtime_error("cannot open " + a.in);
  }
  std::istream& in = file.is_open() ? file : std::cin;
  std::vector<bench::BenchRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(bench::parse_record(line));
  }
  const auto rows = bench::summarize(records);
  emit(a.out, a.as_json ? bench::summary_json(rows) + "\n" : bench::format_table(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse polynomial interpolation by diversification"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a random T-sparse polynomial");
  g->add_option("--kind", gen.kind, "ff or approx")->check(CLI::IsMember({"ff", "approx"}));
  g->add_option("--terms", gen.terms, "Number of terms T")->check(CLI::PositiveNumber);
  g->add_option("--degbits", gen.degbits, "Degree bound D = 2^degbits")->check(CLI::Range(1, 4096));
  g->add_option("--q", gen.q, "Field prime");
  g->add_option("--seed", gen.seed);
  g->add_option("--delta", gen.delta, "Coefficient floor |c| >= delta ||f|| (approx)");
  g->add_flag("--unsafe-q", gen.unsafe_q, "Allow q < T(T-1)D + 1");
  g->add_option("--vars", gen.vars, "Number of variables (multivariate ff)");
  g->add_option("--var-degree", gen.var_degree, "Per-variable degree bound d");
  g->add_option("--out", gen.out, "Output file (default stdout)");

  InterpArgs interp;
  auto* in = app.add_subcommand("interp", "Interpolate a polynomial through its black box");
  auto* src = in->add_option("--in", interp.in, "Polynomial file hidden behind the black box");
  in->add_option("--slp", interp.slp, "Straight-line program file instead of --in")->excludes(src);
  in->add_option("--alg", interp.alg, "alg1, alg1pp, gsmc, verify (Las Vegas) or approx");
  in->add_option("--terms", interp.terms, "Term bound T (default: actual count)");
  in->add_option("--degbits", interp.degbits, "Degree bound D = 2^degbits (default: tight)");
  in->add_option("--q", interp.q, "Field prime for --slp");
  in->add_option("--mu", interp.mu, "Failure probability")->check(CLI::Range(1e-12, 0.999999));
  in->add_option("--eps", interp.eps, "Relative evaluation error (approx)");
  in->add_option("--delta", interp.delta, "Coefficient floor, or 'auto' (heuristic)");
  in->add_option("--seed", interp.seed);
  in->add_option("--max-iterations", interp.max_iterations, "Las Vegas round cap, 0 = none");
  in->add_flag("--unsafe-q", interp.unsafe_q, "Allow q < T(T-1)D + 1");
  in->add_flag("--json", interp.as_json, "Print a JSON summary to stdout (the result still goes to --out if set)");
  in->add_option("--out", interp.out, "Result file (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Deterministic zero test of f - g");
  v->add_option("--in", verify.in, "Polynomial f")->required();
  v->add_option("--against", verify.against, "Polynomial g (default 0)");
  v->add_option("--terms", verify.terms, "Sparsity bound of f - g");
  v->add_option("--degbits", verify.degbits, "Degree bound D = 2^degbits");
  v->add_flag("--json", verify.as_json);

  BenchArgs bargs;
  auto* b = app.add_subcommand("bench", "Run an experiment grid, JSON lines to stdout");
  b->add_option("--suite", bargs.suite, "Suite JSON file (overrides the grid flags)");
  b->add_option("--alg", bargs.algs, "Algorithms")->delimiter(',');
  b->add_option("--terms", bargs.terms, "T values")->delimiter(',');
  b->add_option("--degbits", bargs.degbits, "log2 D values")->delimiter(',');
  b->add_option("--eps", bargs.eps, "Noise levels (approx)")->delimiter(',');
  b->add_option("--delta", bargs.delta);
  b->add_option("--trials", bargs.trials);
  b->add_option("--q", bargs.q);
  b->add_option("--mu", bargs.mu);
  b->add_option("--seed", bargs.seed);
  b->add_flag("--unsafe-q", bargs.unsafe_q);
  b->add_option("--jobs", bargs.jobs, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--out", bargs.out, "Records file (default stdout)");
  b->add_option("--summary", bargs.summary, "Summary file (default stderr)");
  b->add_flag("--json", bargs.as_json, "Summary as JSON");

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Summarize a record stream");
  r->add_option("--in", rep.in, "Records file (default stdin)");
  r->add_option("--out", rep.out, "Output file (default stdout)");
  r->add_flag("--json", rep.as_json, "Summary as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return run_gen(gen);
    if (*in) {
      if (interp.in.empty() && interp.slp.empty()) {
        throw CLI::ValidationError("interp", "needs --in or --slp");
      }
      return run_interp(interp);
    }
    if (*v) return run_verify(verify);
    if (*b) return run_bench_cmd(bargs);
    if (*r) return run_report(rep);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "sparsediv: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
