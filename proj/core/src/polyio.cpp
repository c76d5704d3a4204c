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

#include "sparsediv/polyio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace sparsediv {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> words;
  std::string w;
  while (ss >> w) words.push_back(w);
  return words;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected unsigned integer, got '" + s + "'");
  }
  return v;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected real number, got '" + s + "'");
  }
}

BigInt parse_big(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected nonnegative decimal exponent, got '" + s + "'");
  }
  return BigInt(s, 10);
}

Fq parse_fq(const PrimeField& field, const std::string& s, std::size_t line) {
  if (s.empty()) throw ParseError(line, "empty coefficient");
  const bool negative = s[0] == '-';
  const std::string digits = negative ? s.substr(1) : s;
  Fq c = field.from_big(parse_big(digits, line));
  return negative ? field.neg(c) : c;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PolyFile read_poly(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<PrimeField> field;
  bool have_field = false;
  PolyFile file;

  std::vector<Term<Fq>> ff_terms;
  std::vector<Term<Complex>> cx_terms;
  std::vector<MultiTerm<Fq>> ff_multi;
  std::vector<MultiTerm<Complex>> cx_multi;
  bool seen_term = false;

  while (std::getline(in, raw)) {
    ++lineno;
    const auto words = split_words(raw);
    if (words.empty() || words[0][0] == '#') continue;

    if (words[0] == "field") {
      if (have_field) throw ParseError(lineno, "duplicate field header");
      if (words.size() == 3 && words[1] == "q") {
        try {
          field.emplace(parse_u64(words[2], lineno));
        } catch (const std::invalid_argument& e) {
          throw ParseError(lineno, e.what());
        }
        file.q = field->modulus();
      } else if (words.size() == 2 && words[1] == "c") {
        file.q.reset();
      } else {
        throw ParseError(lineno, "expected 'field q <q>' or 'field c'");
      }
      have_field = true;
      continue;
    }
    if (!have_field) throw ParseError(lineno, "missing field header");

    if (words[0] == "vars") {
      if (seen_term || file.vars) throw ParseError(lineno, "vars header must precede terms");
      if (words.size() != 3) throw ParseError(lineno, "expected 'vars <n> <d>'");
      const std::uint64_t n = parse_u64(words[1], lineno);
      const std::uint64_t d = parse_u64(words[2], lineno);
      if (n == 0 || d < 2) throw ParseError(lineno, "vars needs n >= 1 and d >= 2");
      file.vars = VarsHeader{static_cast<std::size_t>(n), d};
      continue;
    }

    seen_term = true;
    const std::size_t coeff_words = file.q ? 1 : 2;
    const std::size_t exp_words = file.vars ? file.vars->nvars : 1;
    if (words.size() != coeff_words + exp_words) {
      throw ParseError(lineno, "expected " + std::to_string(coeff_words + exp_words) +
                                   " fields, got " + std::to_string(words.size()));
    }
    if (file.vars) {
      std::vector<std::uint64_t> exps;
      for (std::size_t j = 0; j < exp_words; ++j) {
        exps.push_back(parse_u64(words[coeff_words + j], lineno));
        if (exps.back() >= file.vars->degree) {
          throw ParseError(lineno, "partial degree not below d");
        }
      }
      if (file.q) {
        ff_multi.push_back({parse_fq(*field, words[0], lineno), std::move(exps)});
      } else {
        cx_multi.push_back(
            {Complex(parse_double(words[0], lineno), parse_double(words[1], lineno)),
             std::move(exps)});
      }
    } else if (file.q) {
      ff_terms.push_back({parse_fq(*field, words[0], lineno), parse_big(words[1], lineno)});
    } else {
      cx_terms.push_back({Complex(parse_double(words[0], lineno), parse_double(words[1], lineno)),
                          parse_big(words[2], lineno)});
    }
  }
  if (!have_field) throw ParseError(lineno, "missing field header");

  try {
    if (file.vars) {
      if (file.q) {
        file.poly = MultiSparsePoly<Fq>(file.vars->nvars, std::move(ff_multi));
      } else {
        file.poly = MultiSparsePoly<Complex>(file.vars->nvars, std::move(cx_multi));
      }
    } else if (file.q) {
      file.poly = SparsePoly<Fq>(std::move(ff_terms));
    } else {
      file.poly = SparsePoly<Complex>(std::move(cx_terms));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  return file;
}

PolyFile read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_poly(in);
}

void write_poly(std::ostream& out, const PolyFile& file) {
  if (file.q) {
    out << "field q " << *file.q << '\n';
  } else {
    out << "field c\n";
  }
  if (file.vars) out << "vars " << file.vars->nvars << ' ' << file.vars->degree << '\n';

  std::visit(
      [&out](const auto& poly) {
        using P = std::decay_t<decltype(poly)>;
        for (const auto& t : poly.terms()) {
          if constexpr (std::is_same_v<P, SparsePoly<Fq>> || std::is_same_v<P, MultiSparsePoly<Fq>>) {
            out << t.coeff.v;
          } else {
            out << format_double(t.coeff.real()) << ' ' << format_double(t.coeff.imag());
          }
          if constexpr (std::is_same_v<P, SparsePoly<Fq>> || std::is_same_v<P, SparsePoly<Complex>>) {
            out << ' ' << t.exp.get_str();
          } else {
            for (std::uint64_t e : t.exps) out << ' ' << e;
          }
          out << '\n';
        }
      },
      file.poly);
}

void write_poly_file(const std::string& path, const PolyFile& file) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_poly(out, file);
}

PolyFile make_file(const PrimeField& field, SparsePoly<Fq> f) {
  return PolyFile{field.modulus(), std::nullopt, std::move(f)};
}

PolyFile make_file(SparsePoly<Complex> f) {
  return PolyFile{std::nullopt, std::nullopt, std::move(f)};
}

}  // namespace sparsediv
