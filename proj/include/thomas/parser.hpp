#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thomas/system.hpp"

namespace thomas {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

/// Expression tree of the system-description language.
struct Expr {
  enum Kind { Number, Jet, Add, Sub, Mul, Pow, Neg, Sin, Cos } kind = Number;
  mpq_class num;                        // Number
  std::string name;                     // Jet: symbol name; Sin/Cos: angle name
  std::vector<std::string> jet_syms;    // Jet: derivation symbols, repetition = order
  std::optional<std::vector<std::uint32_t>> jet_numeric;  // Jet: numeric multiindex
  std::vector<Expr> kids;
  std::uint32_t exponent = 0;           // Pow
  int line = 0, col = 0;
};

struct Statement {
  enum Kind { Eq, Ineq } kind;
  Expr expr;
};

/// Parsed system file before ring construction.
struct SystemAst {
  std::vector<std::string> indeps, params, deps;
  std::vector<std::vector<std::string>> blocks;  // empty: single block over deps
  std::vector<Statement> statements;
};

SystemAst parse_system(const std::string& text);

struct BuiltSystem {
  std::shared_ptr<DiffRing> ring;
  DiffSystem system;
};

/// Resolves names, validates jet indices, and produces polynomials.
/// Trigonometric nodes must have been eliminated (encode_trig) first.
BuiltSystem build_system(const SystemAst& ast);

Poly build_expression(const DiffRing& ring, const Expr& e);
Poly parse_expression(const DiffRing& ring, const std::string& text);

}  // namespace thomas
