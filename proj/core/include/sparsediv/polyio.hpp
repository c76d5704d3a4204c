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

// Plain-text polynomial files.
//
//   field q <q>          or   field c
//   vars <n> <d>              (optional; multivariate, partial degrees < d)
//   <coeff> <exp>             finite field, univariate
//   <re> <im> <exp>           complex, univariate
//   <coeff> <e1> ... <en>     multivariate rows carry n exponents
//
// Blank lines and lines starting with '#' are ignored. Exponents are
// decimal and may be arbitrarily large.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "sparsediv/poly.hpp"

namespace sparsediv {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct VarsHeader {
  std::size_t nvars;
  std::uint64_t degree;  // per-variable bound d
};

using AnyPoly = std::variant<SparsePoly<Fq>, SparsePoly<Complex>, MultiSparsePoly<Fq>,
                             MultiSparsePoly<Complex>>;

struct PolyFile {
  std::optional<std::uint64_t> q;  // empty for complex coefficients
  std::optional<VarsHeader> vars;
  AnyPoly poly;
};

/// Throws ParseError on malformed input.
PolyFile read_poly(std::istream& in);
PolyFile read_poly_file(const std::string& path);

void write_poly(std::ostream& out, const PolyFile& file);
void write_poly_file(const std::string& path, const PolyFile& file);

PolyFile make_file(const PrimeField& field, SparsePoly<Fq> f);
PolyFile make_file(SparsePoly<Complex> f);

}  // namespace sparsediv
