// Text syntax for algebra elements, used by the CLI and the golden files.
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := uint | 't' | 'I'k | 'U'k | 'L'k | 'R'k
//
// Examples: "R2*L2 + L2*R2", "t^2*I1", "U1^2", "0", "3*U3^2".

#pragma once

#include <string>

#include "cm1/algebra.hpp"

namespace cm1 {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(size_t p, const std::string& what)
      : std::runtime_error(what + " (at position " + std::to_string(p) + ")"),
        pos(p) {}
};

AlgebraElement parse_element(const AlgebraContext& ctx, const std::string& text);

// Deterministic printer; parse_element(print_element(x)) == x.
std::string print_element(const AlgebraContext& ctx, const AlgebraElement& x);
std::string print_path(const AlgebraContext& ctx, const BasisPath& p);

// Parses a string printed by print_path into a single basis path.
BasisPath parse_path(const AlgebraContext& ctx, const std::string& text);

// Shadow grading rendered in true (half-integer) units, e.g. "(1/2, 1, 0)".
std::string format_shadow(const std::vector<int>& dbl);

}  // namespace cm1
