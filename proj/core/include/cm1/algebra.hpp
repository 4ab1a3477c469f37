// Path algebra of the linear quiver with loops at both ends, modulo its
// monomial ideal, together with the half-integer multigrading (stored
// doubled) and the central variable t.
//
// Quiver for parameter m >= 3: vertices [1]..[m-1]; arrows
//   L_i : [i] -> [i-1]   and   R_i : [i-1] -> [i]      for 2 <= i <= m-1,
//   U_1 : [1] -> [1],          U_m : [m-1] -> [m-1].
// Vanishing monomials: L_i L_{i-1}, R_{i-1} R_i (3 <= i <= m-1),
// L_2 U_1, U_1 R_2, R_{m-1} U_m, U_m L_{m-1}.
// Words compose left to right: the target of each letter is the source of
// the next.
//
// All values here are immutable after construction and safe to share
// across threads.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cm1 {

using Coeff = long long;
using Gen = std::uint8_t;

// Generator ids: 0 = U_1, 1 = U_m, then L_i = 2(i-1), R_i = 2(i-1)+1
// for i = 2..m-1.
constexpr Gen kGenU1 = 0;
constexpr Gen kGenUm = 1;
constexpr Gen gen_l(int i) { return static_cast<Gen>(2 * (i - 1)); }
constexpr Gen gen_r(int i) { return static_cast<Gen>(2 * (i - 1) + 1); }

struct AlgebraContext {
  int m = 0;
  int num_gens = 0;
  std::vector<int> src;                    // by gen id, vertices 1..m-1
  std::vector<int> dst;
  std::vector<std::string> gen_name;       // "U1", "U4", "L2", ...
  std::vector<std::vector<bool>> composable;  // [g][h]: g then h is nonzero
  std::vector<std::pair<Gen, Gen>> forbidden; // the vanishing length-2 factors

  bool is_vertex(int x) const { return 1 <= x && x <= m - 1; }
};

// Throws std::invalid_argument for m < 3 (the degenerate m = 2 algebra is
// out of scope here).
AlgebraContext make_algebra(int m);

// A basis path: a source vertex plus a word of generator ids.  The empty
// word is the idempotent at `source`.  A nonempty word must be composable
// and avoid the vanishing factors; helpers below maintain that invariant.
struct BasisPath {
  int source = 1;
  std::vector<Gen> word;

  bool is_idempotent() const { return word.empty(); }
  int length() const { return static_cast<int>(word.size()); }
  auto operator<=>(const BasisPath&) const = default;
};

BasisPath idempotent(int vertex);
BasisPath path_of_gen(const AlgebraContext& ctx, Gen g);
BasisPath path_of_word(const AlgebraContext& ctx, const std::vector<Gen>& word);

int path_target(const AlgebraContext& ctx, const BasisPath& p);
bool word_is_basis(const AlgebraContext& ctx, int source, const std::vector<Gen>& word);

// Concatenation in the quotient: nullopt encodes the zero product.
std::optional<BasisPath> concat(const AlgebraContext& ctx, const BasisPath& a,
                                const BasisPath& b);

// All splittings p = a * b into two nonempty factors, in order of the cut
// position.  Throws std::invalid_argument on an idempotent.
std::vector<std::pair<BasisPath, BasisPath>> factorizations(
    const AlgebraContext& ctx, const BasisPath& p);

// Doubled multigrading: component i-1 of the vector is twice the e_i
// coordinate, so L_i and R_i contribute 1, U_1 and U_m contribute 2, and t
// contributes 2 in every component.
std::vector<int> dbl_shadow(const AlgebraContext& ctx, const BasisPath& p);
int dbl_shadow_total(const AlgebraContext& ctx, const BasisPath& p);

// All pure (nonempty) basis paths with doubled grading total <= bound,
// sorted.  Complete and duplicate free.
std::vector<BasisPath> basis_paths_up_to(const AlgebraContext& ctx, int bound);

struct Monomial {
  BasisPath path;
  int t = 0;
  auto operator<=>(const Monomial&) const = default;
};

// Integer linear combination of monomials (basis path times a power of t).
// Normalized: no zero coefficients are stored.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(int m) : m_(m) {}

  static AlgebraElement zero(int m) { return AlgebraElement(m); }
  static AlgebraElement from_path(int m, const BasisPath& p, int t = 0,
                                  Coeff c = 1);

  int m() const { return m_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Coeff>& terms() const { return terms_; }

  void add_term(const Monomial& mono, Coeff c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(Coeff c) const;
  AlgebraElement times_t(int k) const;   // multiply by t^k
  bool operator==(const AlgebraElement& o) const {
    return m_ == o.m_ && terms_ == o.terms_;
  }

 private:
  int m_ = 0;
  std::map<Monomial, Coeff> terms_;
};

// Bilinear product; throws std::invalid_argument if the operands belong to
// different contexts.
AlgebraElement multiply(const AlgebraContext& ctx, const AlgebraElement& a,
                        const AlgebraElement& b);
AlgebraElement multiply_paths(const AlgebraContext& ctx, const BasisPath& a,
                              const BasisPath& b);

// x * e and e * x for a single path x, used by the extended operation terms.
AlgebraElement path_times(const AlgebraContext& ctx, const BasisPath& x,
                          const AlgebraElement& e);
AlgebraElement times_path(const AlgebraContext& ctx, const AlgebraElement& e,
                          const BasisPath& x);

// U_i as an element: the generator for i in {1, m}, R_i L_i + L_i R_i for
// 2 <= i <= m-1.  Throws std::out_of_range otherwise.
AlgebraElement u_element(const AlgebraContext& ctx, int i);

// One unit: the sum of all idempotents.
AlgebraElement unit_element(const AlgebraContext& ctx);

struct GradingInfo {
  bool is_zero = false;
  std::optional<std::vector<int>> dbl_shadow;  // nullopt: not homogeneous
  std::optional<int> gr;                       // nullopt: not homogeneous
};

// Gradings of a monomial: doubled shadow of the path plus 2 per component
// for each power of t; gr is t-degree times (2m - 4).
std::vector<int> dbl_shadow(const AlgebraContext& ctx, const Monomial& mono);
int gr_degree(const AlgebraContext& ctx, const Monomial& mono);

// Common grading of all monomials of x, per grading, or nonhomogeneous.
GradingInfo gradings(const AlgebraContext& ctx, const AlgebraElement& x);

}  // namespace cm1
