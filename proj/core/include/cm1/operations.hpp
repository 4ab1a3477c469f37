// Evaluation of the weighted operations over the integers: centered counts
// from the enumeration index, the left/right extension sums, the arity-0
// curvature elements, multiplication at (weight, arity) = (0, 2), and the
// multilinear, t-equivariant, strictly unital extension to all elements.

#pragma once

#include <unordered_map>

#include "cm1/enumerate.hpp"

namespace cm1 {

class Evaluator {
 public:
  Evaluator(AlgebraContext ctx, OperationIndex idx);

  const AlgebraContext& ctx() const { return ctx_; }
  const OperationIndex& index() const { return idx_; }
  int d_max() const { return idx_.d_max; }

  // Centered count on pure basis paths.  Zero when the gradings rule out
  // every graph; BudgetError when a count would need d beyond the index.
  AlgebraElement c(const std::vector<int>& weight,
                   const std::vector<BasisPath>& inputs) const;

  // Centered count extended multilinearly; inputs must be t-free with no
  // idempotent component.
  AlgebraElement c_elements(const std::vector<int>& weight,
                            const std::vector<AlgebraElement>& inputs) const;

  // The full operation on pure basis paths with n >= 2,
  // (weight, n) != (0, 2): centered plus left- and right-extended terms.
  AlgebraElement mu_pure(const std::vector<int>& weight,
                         const std::vector<BasisPath>& inputs) const;

  // The full operation on arbitrary elements of the t-extended algebra.
  AlgebraElement mu(const std::vector<int>& weight,
                    const std::vector<AlgebraElement>& inputs) const;

 private:
  AlgebraContext ctx_;
  OperationIndex idx_;
  // Flat lookup mirroring idx_.entries for query evaluation.
  std::unordered_map<std::string, const std::vector<IndexValue>*> lookup_;

  std::string encode(const std::vector<int>& weight,
                     const std::vector<BasisPath>& inputs) const;
};

// Weight-vector helpers shared by the verifier and the CLI.
std::vector<int> zero_weight(int m);
std::vector<int> basis_weight(int m, int i);  // e_i
bool is_zero_weight(const std::vector<int>& w);
int weight_total(const std::vector<int>& w);

}  // namespace cm1
