#include "doctest.h"

#include "cm1/operations.hpp"
#include "cm1/parse.hpp"

using namespace cm1;

namespace {

struct Fixture {
  AlgebraContext ctx;
  Evaluator eval;
  explicit Fixture(int m, int d_max = 3)
      : ctx(make_algebra(m)), eval(ctx, build_index(ctx, d_max)) {}

  AlgebraElement el(const std::string& s) const {
    return parse_element(ctx, s);
  }
  std::vector<AlgebraElement> els(const std::vector<std::string>& ss) const {
    std::vector<AlgebraElement> out;
    for (const auto& s : ss) out.push_back(el(s));
    return out;
  }
  AlgebraElement op(const std::vector<int>& w,
                    const std::vector<std::string>& ss) const {
    return eval.mu(w, els(ss));
  }
};

}  // namespace

TEST_CASE("centered counts reproduce the worked values") {
  Fixture f(4);
  auto c = [&](const std::vector<int>& w, const std::vector<std::string>& ss) {
    return f.eval.c_elements(w, f.els(ss));
  };
  CHECK(c({0, 0, 0, 0},
          {"R2", "R3", "U4", "U3", "U4", "L3", "L2", "U1", "U2", "U1"}) ==
        f.el("t^2*I1"));
  CHECK(c({0, 0, 0, 1}, {"L3", "L2", "U1", "U2", "U1", "R2", "U3^2", "L2", "U1",
                         "R2", "R3", "U4^2"}) == f.el("t^3*I3"));
  CHECK(c({0, 0, 1, 2}, {"L2", "U1^2", "R2*U2", "U3"}) == f.el("t^2*I2"));
  // Odd arity or mismatched gradings never count graphs.
  CHECK(c({0, 0, 0, 0}, {"U1", "R2", "R3"}).is_zero());
  CHECK(c({0, 0, 0, 0}, {"U1", "U1"}).is_zero());
  CHECK_THROWS_AS(c({0, 0, 0, 0}, {"t*U1", "R2"}), std::invalid_argument);
  CHECK_THROWS_AS(c({0, 0, 0, 0}, {"I1", "R2"}), std::invalid_argument);
}

TEST_CASE("operation values from the worked examples") {
  Fixture f4(4);
  CHECK(f4.op({0, 0, 0, 0}, {"U1", "R2", "R3", "U4", "L3", "L2"}) ==
        f4.el("t*I1"));
  Fixture f3(3);
  CHECK(f3.op({0, 0, 0}, {"U1", "R2", "U3", "L2"}) == f3.el("t*I1"));
  CHECK(f3.op({0, 0, 2}, {"U1^2", "U2^2"}) == f3.el("t^2*I1"));
  // Extended readings carry the forced power of t.
  CHECK(f4.op({0, 0, 0, 0}, {"R2", "R3", "U4", "U3", "U4", "L3", "L2", "U1",
                             "U2", "U1^3"}) == f4.el("t^2*U1^2"));
  CHECK(f4.op({0, 0, 0, 0}, {"U2*R2", "R3", "U4", "U3", "U4", "L3", "L2", "U1",
                             "U2", "U1"}) == f4.el("t^2*U2*I1"));
}

TEST_CASE("arity zero and one") {
  Fixture f(4, 1);
  CHECK(f.op({1, 0, 0, 0}, {}) == f.el("U1"));
  CHECK(f.op({0, 1, 0, 0}, {}) == f.el("U2"));
  CHECK(f.op({0, 0, 0, 1}, {}) == f.el("U4"));
  CHECK(f.op({0, 0, 0, 0}, {}).is_zero());
  CHECK(f.op({2, 0, 0, 0}, {}).is_zero());
  CHECK(f.op({1, 1, 0, 0}, {}).is_zero());
  CHECK(f.op({0, 0, 0, 0}, {"U1"}).is_zero());
  CHECK(f.op({1, 0, 0, 0}, {"U1"}).is_zero());
}

TEST_CASE("weight and arity two is plain multiplication") {
  Fixture f(4, 1);
  CHECK(f.op({0, 0, 0, 0}, {"R2", "L2"}) == f.el("R2*L2"));
  CHECK(f.op({0, 0, 0, 0}, {"U1", "R2"}).is_zero());
  CHECK(f.op({0, 0, 0, 0}, {"I1", "U1"}) == f.el("U1"));
  CHECK(f.op({0, 0, 0, 0}, {"I1", "I1"}) == f.el("I1"));
  CHECK(f.op({0, 0, 0, 0}, {"t*U1", "U1"}) == f.el("t*U1^2"));
}

TEST_CASE("strict unitality") {
  Fixture f(4);
  CHECK(f.op({0, 0, 0, 0}, {"I1", "U1", "R2"}).is_zero());
  CHECK(f.op({0, 0, 0, 0}, {"U1", "R2", "R3", "U4", "L3", "I1"}).is_zero());
  CHECK(f.op({1, 0, 0, 0}, {"I1", "I1"}).is_zero());
  // The unit acts as identity only through the binary product.
  auto one = unit_element(f.ctx);
  CHECK(f.eval.mu({0, 0, 0, 0}, {one, f.el("R2*L2")}) == f.el("R2*L2"));
}

TEST_CASE("t equivariance and multilinearity") {
  Fixture f(4);
  CHECK(f.op({0, 0, 0, 0}, {"t*U1", "R2", "R3", "U4", "L3", "L2"}) ==
        f.el("t^2*I1"));
  CHECK(f.op({0, 0, 0, 0}, {"U1", "t^2*R2", "R3", "U4", "L3", "L2"}) ==
        f.el("t^3*I1"));
  // (a + b) in one slot splits into two evaluations.
  auto lhs = f.op({0, 0, 0, 0}, {"U1 + t*U1", "R2", "R3", "U4", "L3", "L2"});
  CHECK(lhs == f.el("t*I1 + t^2*I1"));
  auto scaled = f.op({0, 0, 0, 0}, {"3*U1", "R2", "R3", "U4", "L3", "L2"});
  CHECK(scaled == f.el("3*t*I1"));
  auto negated = f.op({0, 0, 0, 0}, {"-U1", "R2", "R3", "U4", "L3", "L2"});
  CHECK(negated == f.el("-t*I1"));
}

TEST_CASE("nonzero operations have non-multiplyable neighbors") {
  Fixture f(3, 2);
  auto paths = basis_paths_up_to(f.ctx, 4);
  std::vector<std::vector<int>> weights = {
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 2}};
  long long nonzero = 0;
  for (const auto& w : weights) {
    bool weighted = weight_total(w) > 0;
    for (const auto& a : paths) {
      for (const auto& b : paths) {
        if (!weighted) continue;  // (0, 2) is multiplication, exempt
        auto val = f.eval.mu(w, {AlgebraElement::from_path(3, a),
                                 AlgebraElement::from_path(3, b)});
        if (val.is_zero()) continue;
        ++nonzero;
        CHECK(!concat(f.ctx, a, b).has_value());
        // Structure constants are nonnegative.
        for (const auto& [mono, coeff] : val.terms()) CHECK(coeff > 0);
      }
    }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("out-of-budget counts raise rather than lie") {
  Fixture f(4, 1);
  // This value needs the d = 2 stratum.
  CHECK_THROWS_AS(f.op({0, 0, 0, 0}, {"R2", "R3", "U4", "U3", "U4", "L3", "L2",
                                      "U1", "U2", "U1"}),
                  BudgetError);
  // A feasibility mismatch short-circuits to zero without needing depth.
  CHECK(f.op({0, 0, 0, 0}, {"U1", "U1", "U1", "U1", "U1", "U1", "U1", "U1",
                            "U1", "U1"})
            .is_zero());
}

TEST_CASE("operations and context must share m") {
  Fixture f(4, 1);
  auto other = make_algebra(3);
  CHECK_THROWS_AS(f.eval.mu({0, 0, 0, 0}, {parse_element(other, "U1")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Evaluator(make_algebra(3), build_index(make_algebra(4), 1)),
                  std::invalid_argument);
}
