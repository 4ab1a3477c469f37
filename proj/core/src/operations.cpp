#include "cm1/operations.hpp"

#include <numeric>

namespace cm1 {

std::vector<int> zero_weight(int m) { return std::vector<int>(m, 0); }

std::vector<int> basis_weight(int m, int i) {
  std::vector<int> w(m, 0);
  w[i - 1] = 1;
  return w;
}

bool is_zero_weight(const std::vector<int>& w) {
  for (int x : w) {
    if (x != 0) return false;
  }
  return true;
}

int weight_total(const std::vector<int>& w) {
  return std::accumulate(w.begin(), w.end(), 0);
}

Evaluator::Evaluator(AlgebraContext ctx, OperationIndex idx)
    : ctx_(std::move(ctx)), idx_(std::move(idx)) {
  if (ctx_.m != idx_.m) {
    throw std::invalid_argument("Evaluator: index was built for another m");
  }
  for (const auto& [key, values] : idx_.entries) {
    lookup_.emplace(encode(key.weight, key.inputs), &values);
  }
}

std::string Evaluator::encode(const std::vector<int>& weight,
                              const std::vector<BasisPath>& inputs) const {
  std::string s;
  s.reserve(weight.size() + 8 * inputs.size());
  for (int w : weight) s.push_back(static_cast<char>(w + 1));
  for (const BasisPath& p : inputs) {
    s.push_back('\x7f');
    s.push_back(static_cast<char>(p.source));
    for (Gen g : p.word) s.push_back(static_cast<char>(g + 1));
  }
  return s;
}

AlgebraElement Evaluator::c(const std::vector<int>& weight,
                            const std::vector<BasisPath>& inputs) const {
  AlgebraElement out(ctx_.m);
  const int n = static_cast<int>(inputs.size());
  if (n == 0) return out;
  int total = 0;
  for (const BasisPath& p : inputs) {
    if (p.is_idempotent()) return out;
    total += dbl_shadow_total(ctx_, p);
  }
  const int wsum = weight_total(weight);
  const int need = total + 2 * wsum;        // doubled grading carried by t^d
  if (need % (2 * ctx_.m) != 0) return out;
  const int d = need / (2 * ctx_.m);
  if (d < 1) return out;
  // Every contributing graph has n = 2md - 4d + 2 - 2w, so a mismatched
  // arity needs no index at all.
  if (n != 2 * ctx_.m * d - 4 * d + 2 - 2 * wsum) return out;
  if (d > idx_.d_max) {
    throw BudgetError(d, idx_.d_max,
                      "operation requires d = " + std::to_string(d) +
                          " but the index holds d <= " +
                          std::to_string(idx_.d_max));
  }
  auto it = lookup_.find(encode(weight, inputs));
  if (it == lookup_.end()) return out;
  for (const IndexValue& v : *it->second) {
    out.add_term(Monomial{idempotent(v.iota), v.d}, v.multiplicity);
  }
  return out;
}

AlgebraElement Evaluator::mu_pure(const std::vector<int>& weight,
                                  const std::vector<BasisPath>& inputs) const {
  AlgebraElement out = c(weight, inputs);
  if (inputs.front().length() > 1) {
    auto rest = inputs;
    for (const auto& [a, a1p] : factorizations(ctx_, inputs.front())) {
      rest.front() = a1p;
      out += path_times(ctx_, a, c(weight, rest));
    }
  }
  if (inputs.back().length() > 1) {
    auto rest = inputs;
    for (const auto& [anp, a] : factorizations(ctx_, inputs.back())) {
      rest.back() = anp;
      out += times_path(ctx_, c(weight, rest), a);
    }
  }
  return out;
}

AlgebraElement Evaluator::c_elements(
    const std::vector<int>& weight,
    const std::vector<AlgebraElement>& inputs) const {
  AlgebraElement out(ctx_.m);
  std::vector<BasisPath> paths(inputs.size());
  auto expand = [&](auto&& self, size_t i, Coeff coeff) -> void {
    if (i == inputs.size()) {
      out += c(weight, paths).scaled(coeff);
      return;
    }
    for (const auto& [mono, k] : inputs[i].terms()) {
      if (mono.t != 0 || mono.path.is_idempotent()) {
        throw std::invalid_argument("c: inputs must be t-free and idempotent-free");
      }
      paths[i] = mono.path;
      self(self, i + 1, coeff * k);
    }
  };
  expand(expand, 0, 1);
  return out;
}

AlgebraElement Evaluator::mu(const std::vector<int>& weight,
                             const std::vector<AlgebraElement>& inputs) const {
  for (const AlgebraElement& e : inputs) {
    if (e.m() != ctx_.m) {
      throw std::invalid_argument("mu: mismatched algebra contexts");
    }
  }
  const size_t n = inputs.size();
  AlgebraElement out(ctx_.m);
  if (n == 0) {
    for (int i = 1; i <= ctx_.m; ++i) {
      if (weight == basis_weight(ctx_.m, i)) return u_element(ctx_, i);
    }
    return out;  // no other arity-0 operations, in particular none at weight 0
  }
  if (n == 1) return out;

  const bool unweighted_pair = n == 2 && is_zero_weight(weight);
  std::vector<Monomial> monos(n);
  auto expand = [&](auto&& self, size_t i, Coeff coeff, int tpow) -> void {
    if (i == n) {
      if (unweighted_pair) {
        out += multiply_paths(ctx_, monos[0].path, monos[1].path)
                   .scaled(coeff)
                   .times_t(tpow);
        return;
      }
      std::vector<BasisPath> paths(n);
      for (size_t k = 0; k < n; ++k) {
        if (monos[k].path.is_idempotent()) return;  // strict unitality
        paths[k] = monos[k].path;
      }
      out += mu_pure(weight, paths).scaled(coeff).times_t(tpow);
      return;
    }
    for (const auto& [mono, k] : inputs[i].terms()) {
      monos[i] = mono;
      self(self, i + 1, coeff * k, tpow + mono.t);
    }
  };
  expand(expand, 0, 1, 0);
  return out;
}

}  // namespace cm1
