#include "cm1/parse.hpp"

#include <cctype>
#include <sstream>

namespace cm1 {

namespace {

struct Parser {
  const AlgebraContext& ctx;
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }

  long long parse_uint() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
      fail("expected integer");
    }
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1'000'000'000LL) fail("integer too large");
      ++pos;
    }
    return v;
  }

  // atom -> element
  AlgebraElement parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("expected atom");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = parse_uint();
      return unit_element(ctx).scaled(v);
    }
    if (c == 't') {
      ++pos;
      return unit_element(ctx).times_t(1);
    }
    if (c == 'I' || c == 'U' || c == 'L' || c == 'R') {
      size_t at = pos;
      ++pos;
      long long k = parse_uint();
      switch (c) {
        case 'I':
          if (!ctx.is_vertex(static_cast<int>(k))) {
            pos = at;
            fail("idempotent index out of range");
          }
          return AlgebraElement::from_path(ctx.m, idempotent(static_cast<int>(k)));
        case 'U':
          // U1 and Um are generators; Uk for 1 < k < m abbreviates the
          // element R_k L_k + L_k R_k.
          if (k < 1 || k > ctx.m) {
            pos = at;
            fail("U index out of range");
          }
          return u_element(ctx, static_cast<int>(k));
        case 'L':
        case 'R':
          if (k < 2 || k > ctx.m - 1) {
            pos = at;
            fail("generator index out of range");
          }
          return AlgebraElement::from_path(
              ctx.m, path_of_gen(ctx, c == 'L' ? gen_l(static_cast<int>(k))
                                               : gen_r(static_cast<int>(k))));
      }
    }
    fail("unexpected character");
  }

  AlgebraElement parse_factor() {
    AlgebraElement base = parse_atom();
    if (eat('^')) {
      long long k = parse_uint();
      AlgebraElement r = unit_element(ctx);
      for (long long i = 0; i < k; ++i) r = multiply(ctx, r, base);
      return r;
    }
    return base;
  }

  AlgebraElement parse_term() {
    AlgebraElement r = parse_factor();
    while (eat('*')) r = multiply(ctx, r, parse_factor());
    return r;
  }

  AlgebraElement parse_expr() {
    bool neg = eat('-');
    AlgebraElement r = parse_term();
    if (neg) r = -r;
    for (;;) {
      if (eat('+')) {
        r += parse_term();
      } else if (eat('-')) {
        r -= parse_term();
      } else {
        break;
      }
    }
    skip_ws();
    if (pos != s.size()) fail("trailing input");
    return r;
  }
};

void print_word(const AlgebraContext& ctx, const std::vector<Gen>& word,
                std::ostringstream& out, bool& first_factor) {
  // Runs of one generator print as powers: U1*U1*U1 -> U1^3.
  size_t i = 0;
  while (i < word.size()) {
    size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    if (!first_factor) out << '*';
    out << ctx.gen_name[word[i]];
    if (j - i > 1) out << '^' << (j - i);
    first_factor = false;
    i = j;
  }
}

}  // namespace

AlgebraElement parse_element(const AlgebraContext& ctx, const std::string& text) {
  Parser p{ctx, text};
  return p.parse_expr();
}

std::string print_path(const AlgebraContext& ctx, const BasisPath& p) {
  if (p.is_idempotent()) return "I" + std::to_string(p.source);
  std::ostringstream out;
  bool first = true;
  print_word(ctx, p.word, out, first);
  return out.str();
}

BasisPath parse_path(const AlgebraContext& ctx, const std::string& text) {
  AlgebraElement e = parse_element(ctx, text);
  if (e.terms().size() != 1) {
    throw ParseError(0, "expected a single basis path");
  }
  const auto& [mono, c] = *e.terms().begin();
  if (c != 1 || mono.t != 0) {
    throw ParseError(0, "expected a bare basis path (coefficient 1, no t)");
  }
  return mono.path;
}

std::string print_element(const AlgebraContext& ctx, const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first_term = true;
  for (const auto& [mono, c] : x.terms()) {
    Coeff mag = c;
    if (first_term) {
      if (c < 0) {
        out << '-';
        mag = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      mag = c < 0 ? -c : c;
    }
    bool first_factor = true;
    if (mag != 1) {
      out << mag;
      first_factor = false;
    }
    if (mono.t > 0) {
      if (!first_factor) out << '*';
      out << 't';
      if (mono.t > 1) out << '^' << mono.t;
      first_factor = false;
    }
    if (mono.path.is_idempotent()) {
      if (!first_factor) out << '*';
      out << 'I' << mono.path.source;
      first_factor = false;
    } else {
      print_word(ctx, mono.path.word, out, first_factor);
    }
    first_term = false;
  }
  return out.str();
}

std::string format_shadow(const std::vector<int>& dbl) {
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < dbl.size(); ++i) {
    if (i) out << ", ";
    if (dbl[i] % 2 == 0) {
      out << dbl[i] / 2;
    } else {
      out << dbl[i] << "/2";
    }
  }
  out << ')';
  return out.str();
}

}  // namespace cm1
