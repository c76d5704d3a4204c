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

#include <sstream>
#include <stdexcept>
#include <string>

#include "sparsediv/blackbox.hpp"

namespace sparsediv {

ExpressionFqBackend::ExpressionFqBackend(const PrimeField& field, std::vector<Instr> program)
    : FqBlackBox(field, nullptr), program_(std::move(program)) {
  if (program_.empty()) throw std::invalid_argument("ExpressionFqBackend: empty program");
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const Instr& in = program_[i];
    const bool binary = in.op == Op::add || in.op == Op::sub || in.op == Op::mul;
    if (binary && (in.lhs >= i || in.rhs >= i)) {
      throw std::invalid_argument("ExpressionFqBackend: instruction " + std::to_string(i) +
                                  " references a later result");
    }
  }
}

ExpressionFqBackend ExpressionFqBackend::parse(const PrimeField& field, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Instr> program;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string op;
    if (!(words >> op) || op[0] == '#') continue;
    Instr instr{};
    if (op == "const") {
      std::int64_t c = 0;
      if (!(words >> c)) throw std::invalid_argument("const needs an integer: " + line);
      instr.op = Op::constant;
      instr.value = field.from_int(c);
    } else if (op == "x") {
      instr.op = Op::var;
    } else if (op == "add" || op == "sub" || op == "mul") {
      instr.op = op == "add" ? Op::add : op == "sub" ? Op::sub : Op::mul;
      if (!(words >> instr.lhs >> instr.rhs)) {
        throw std::invalid_argument(op + " needs two operand indices: " + line);
      }
    } else {
      throw std::invalid_argument("unknown instruction: " + line);
    }
    program.push_back(instr);
  }
  return ExpressionFqBackend(field, std::move(program));
}

DenseImage<Fq> ExpressionFqBackend::probe(std::uint64_t p, const Fq& alpha) const {
  if (p == 0) throw std::invalid_argument("probe: p must be positive");
  counter_->record_probe(p);
  const PrimeField& F = field();
  std::vector<DenseImage<Fq>> regs;
  regs.reserve(program_.size());
  for (const Instr& in : program_) {
    DenseImage<Fq> r(p);
    switch (in.op) {
      case Op::constant:
        r[0] = in.value;
        break;
      case Op::var:
        r[1 % p] = alpha;
        break;
      case Op::add:
      case Op::sub:
        for (std::uint64_t j = 0; j < p; ++j) {
          r[j] = in.op == Op::add ? F.add(regs[in.lhs][j], regs[in.rhs][j])
                                  : F.sub(regs[in.lhs][j], regs[in.rhs][j]);
        }
        break;
      case Op::mul: {
        const auto& a = regs[in.lhs];
        const auto& b = regs[in.rhs];
        for (std::uint64_t i = 0; i < p; ++i) {
          if (is_zero(a[i])) continue;
          for (std::uint64_t j = 0; j < p; ++j) {
            const std::uint64_t k = i + j >= p ? i + j - p : i + j;
            r[k] = F.add(r[k], F.mul(a[i], b[j]));
          }
        }
        break;
      }
    }
    regs.push_back(std::move(r));
  }
  return std::move(regs.back());
}

}  // namespace sparsediv
