#include "cm1/verify.hpp"

#include <atomic>
#include <numeric>
#include <thread>

#include "json.hpp"

#include "cm1/parse.hpp"

namespace cm1 {

namespace {

// Inner operation on a consecutive slice of pure inputs.
AlgebraElement inner_value(const Evaluator& eval, const std::vector<int>& v,
                           const std::vector<BasisPath>& inputs, int r, int s) {
  const AlgebraContext& ctx = eval.ctx();
  if (s == 0) {
    for (int i = 1; i <= ctx.m; ++i) {
      if (v == basis_weight(ctx.m, i)) return u_element(ctx, i);
    }
    return AlgebraElement::zero(ctx.m);
  }
  if (s == 1) return AlgebraElement::zero(ctx.m);
  if (s == 2 && is_zero_weight(v)) {
    return multiply_paths(ctx, inputs[r], inputs[r + 1]);
  }
  std::vector<BasisPath> slice(inputs.begin() + r, inputs.begin() + r + s);
  return eval.mu_pure(v, slice);
}

// Outer operation with the inner value substituted at position r, expanded
// over the inner value's monomials.
AlgebraElement outer_value(const Evaluator& eval, const std::vector<int>& u,
                           const std::vector<BasisPath>& inputs, int r, int s,
                           const AlgebraElement& inner) {
  const AlgebraContext& ctx = eval.ctx();
  const int n = static_cast<int>(inputs.size());
  const int arity = n - s + 1;
  AlgebraElement out(ctx.m);
  if (arity == 1) return out;
  const bool unweighted_pair = arity == 2 && is_zero_weight(u);
  std::vector<BasisPath> args(arity);
  for (int i = 0; i < r; ++i) args[i] = inputs[i];
  for (int i = r + s; i < n; ++i) args[i - s + 1] = inputs[i];
  for (const auto& [mono, coeff] : inner.terms()) {
    args[r] = mono.path;
    if (unweighted_pair) {
      out += multiply_paths(ctx, args[0], args[1]).scaled(coeff).times_t(mono.t);
      continue;
    }
    if (mono.path.is_idempotent()) continue;  // strict unitality
    out += eval.mu_pure(u, args).scaled(coeff).times_t(mono.t);
  }
  return out;
}

std::vector<AlgebraElement> paths_as_elements(const AlgebraContext& ctx,
                                              const std::vector<BasisPath>& ps) {
  std::vector<AlgebraElement> out;
  out.reserve(ps.size());
  for (const BasisPath& p : ps) {
    out.push_back(AlgebraElement::from_path(ctx.m, p));
  }
  return out;
}

// Iterates componentwise splits w = u + v; calls f(u, v).
template <class F>
void for_weight_splits(const std::vector<int>& w, F&& f) {
  const int m = static_cast<int>(w.size());
  std::vector<int> v(m, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      std::vector<int> u(m);
      for (int k = 0; k < m; ++k) u[k] = w[k] - v[k];
      f(u, v);
      return;
    }
    for (v[i] = 0; v[i] <= w[i]; ++v[i]) self(self, i + 1);
    v[i] = 0;
  };
  rec(rec, 0);
}

}  // namespace

void audit_operation(const AlgebraContext& ctx, const std::vector<int>& weight,
                     const std::vector<AlgebraElement>& inputs,
                     const AlgebraElement& output, AuditLog& log) {
  ++log.checked;
  const int n = static_cast<int>(inputs.size());
  const int wsum = weight_total(weight);
  const bool pair = n == 2 && wsum == 0;
  auto violation = [&](const std::string& what) {
    log.violations.push_back(what);
  };

  bool all_pure_paths = true;
  bool some_idempotent = false;
  for (const AlgebraElement& e : inputs) {
    if (e.terms().size() != 1) {
      all_pure_paths = false;
      continue;
    }
    const auto& [mono, c] = *e.terms().begin();
    if (mono.t != 0 || c != 1) all_pure_paths = false;
    if (mono.path.is_idempotent()) some_idempotent = true;
  }

  if (all_pure_paths && some_idempotent && !pair && !output.is_zero()) {
    violation("unitality: idempotent input but nonzero output");
  }
  if (n >= 1 && n % 2 == 1 && !output.is_zero()) {
    violation("parity: nonzero operation with odd arity " + std::to_string(n));
  }
  if (output.is_zero()) return;

  // Conservation laws need homogeneous inputs.
  std::vector<int> want(ctx.m, 0);
  bool homogeneous = true;
  int gr_in = 0;
  for (const AlgebraElement& e : inputs) {
    GradingInfo gi = gradings(ctx, e);
    if (gi.is_zero || !gi.dbl_shadow || !gi.gr) {
      homogeneous = false;
      break;
    }
    for (int k = 0; k < ctx.m; ++k) want[k] += (*gi.dbl_shadow)[k];
    gr_in += *gi.gr;
  }
  if (homogeneous) {
    for (int k = 0; k < ctx.m; ++k) want[k] += 2 * weight[k];
    GradingInfo go = gradings(ctx, output);
    if (!go.dbl_shadow || *go.dbl_shadow != want) {
      violation("shadow grading not conserved");
    }
    int want_gr = gr_in + n - 2 + 2 * wsum;
    if (!go.gr || *go.gr != want_gr) {
      violation("gr degree law violated");
    }
  }
  if (all_pure_paths && !some_idempotent && !pair) {
    for (int i = 0; i + 1 < n; ++i) {
      const BasisPath& a = inputs[i].terms().begin()->first.path;
      const BasisPath& b = inputs[i + 1].terms().begin()->first.path;
      if (concat(ctx, a, b)) {
        violation("adjacent inputs " + std::to_string(i) + "," +
                  std::to_string(i + 1) + " multiply to a nonzero element");
      }
    }
  }
}

AlgebraElement ainfty_sum(const Evaluator& eval, const RelationInstance& inst,
                          std::vector<TermTrace>* trace, AuditLog* audit) {
  const AlgebraContext& ctx = eval.ctx();
  const int n = static_cast<int>(inst.inputs.size());
  AlgebraElement total(ctx.m);
  for_weight_splits(inst.weight, [&](const std::vector<int>& u,
                                     const std::vector<int>& v) {
    for (int s = 0; s <= n; ++s) {
      if (s == 1) continue;
      if (s == 0 && weight_total(v) != 1) continue;
      for (int r = 0; r + s <= n; ++r) {
        const int t = n - s - r;
        AlgebraElement inner;
        try {
          inner = inner_value(eval, v, inst.inputs, r, s);
        } catch (const BudgetError& e) {
          throw BudgetError(e.required, e.budget,
                            std::string(e.what()) + " [inner term s=" +
                                std::to_string(s) + " r=" + std::to_string(r) +
                                "]");
        }
        if (inner.is_zero()) continue;
        if (audit && s >= 2 && !(s == 2 && is_zero_weight(v))) {
          std::vector<BasisPath> slice(inst.inputs.begin() + r,
                                       inst.inputs.begin() + r + s);
          audit_operation(ctx, v, paths_as_elements(ctx, slice), inner, *audit);
        }
        AlgebraElement outer;
        try {
          outer = outer_value(eval, u, inst.inputs, r, s, inner);
        } catch (const BudgetError& e) {
          throw BudgetError(e.required, e.budget,
                            std::string(e.what()) + " [outer term s=" +
                                std::to_string(s) + " r=" + std::to_string(r) +
                                "]");
        }
        if (audit) {
          std::vector<AlgebraElement> args;
          for (int i = 0; i < r; ++i) {
            args.push_back(AlgebraElement::from_path(ctx.m, inst.inputs[i]));
          }
          args.push_back(inner);
          for (int i = r + s; i < n; ++i) {
            args.push_back(AlgebraElement::from_path(ctx.m, inst.inputs[i]));
          }
          audit_operation(ctx, u, args, outer, *audit);
        }
        if (outer.is_zero()) continue;
        const int sign = ((r + s * t) % 2 == 0) ? 1 : -1;
        if (trace) {
          trace->push_back(TermTrace{r, s, t, u, v,
                                     print_element(ctx, inner),
                                     print_element(ctx, outer), sign});
        }
        total += sign > 0 ? outer : -outer;
      }
    }
  });
  return total;
}

namespace {

// Depth forced by the arity law n = 2md - 4d + 2 - 2w, or -1 when no depth
// fits (such operations vanish outright).
int depth_from_arity(int m, int arity, int wsum) {
  const int num = arity - 2 + 2 * wsum;
  const int denom = 2 * m - 4;
  if (num <= 0 || num % denom != 0) return -1;
  return num / denom;
}

// Grading screen for an inner operation on the honest path slice
// b_r..b_{r+s-1}: the grading/arity laws with the extension drop
// intervals.
bool inner_feasible(const AlgebraContext& ctx, const std::vector<int>& dbl,
                    const std::vector<int>& v, int r, int s) {
  const int vsum = weight_total(v);
  if (s == 0) return vsum == 1;
  if (s == 1) return false;
  // Plain multiplication carries no grading obstruction; whether the
  // product vanishes is left to the exact evaluation.
  if (s == 2 && vsum == 0) return true;
  const int d = depth_from_arity(ctx.m, s, vsum);
  if (d < 1) return false;
  int total = 2 * vsum;
  for (int i = r; i < r + s; ++i) total += dbl[i];
  const int k = total - 2 * ctx.m * d;  // grading shed by an extension
  if (k == 0) return true;
  if (k < 0) return false;
  return k <= dbl[r] - 1 || k <= dbl[r + s - 1] - 1;
}

// Grading screen for the outer operation.  The inner output enters through
// its path part only: a monomial with t-power t_q has path grading
// (slice total) + 2*sum(v) - 2m*t_q, so the screen quantifies over t_q.
bool outer_feasible(const AlgebraContext& ctx, const RelationInstance& inst,
                    const std::vector<int>& dbl, int instance_total,
                    const std::vector<int>& u, const std::vector<int>& v,
                    int r, int s) {
  const int n = static_cast<int>(inst.inputs.size());
  const int arity = n - s + 1;
  if (arity == 1) return false;
  const int usum = weight_total(u);
  if (arity == 2 && usum == 0) return true;  // plain multiplication
  const int d = depth_from_arity(ctx.m, arity, usum);
  if (d < 1) return false;
  const int wsum = usum + weight_total(v);
  int slice_total = 2 * weight_total(v);
  for (int i = r; i < r + s; ++i) slice_total += dbl[i];
  const bool first_is_inner = (r == 0);
  const bool last_is_inner = (r + s == n);
  for (int t_q = 0;; ++t_q) {
    const int k = instance_total + 2 * wsum - 2 * ctx.m * (t_q + d);
    if (k < 0) return false;
    const int q_path = slice_total - 2 * ctx.m * t_q;
    if (q_path < 0) return false;
    const int first = first_is_inner ? q_path : dbl[0];
    const int last = last_is_inner ? q_path : dbl[n - 1];
    if (k == 0 || k <= first - 1 || k <= last - 1) return true;
  }
}

// An instance is worth evaluating if some (u, v, r, s) term survives the
// grading screens for both the inner and the outer operation; anything
// screened out vanishes term by term.
bool instance_feasible(const AlgebraContext& ctx, const RelationInstance& inst,
                       const std::vector<int>& dbl) {
  const int n = static_cast<int>(inst.inputs.size());
  int instance_total = 0;
  for (int x : dbl) instance_total += x;
  bool feasible = false;
  for_weight_splits(inst.weight, [&](const std::vector<int>& u,
                                     const std::vector<int>& v) {
    if (feasible) return;
    const int vsum = weight_total(v);
    for (int s = 0; s <= n && !feasible; ++s) {
      if (s == 1) continue;
      if (s == 0 && vsum != 1) continue;
      for (int r = 0; r + s <= n; ++r) {
        if (inner_feasible(ctx, dbl, v, r, s) &&
            outer_feasible(ctx, inst, dbl, instance_total, u, v, r, s)) {
          feasible = true;
          break;
        }
      }
    }
  });
  return feasible;
}

}  // namespace

SweepSummary sweep(const Evaluator& eval, const SweepOptions& options,
                   const std::function<void(const RelationReport&)>& sink) {
  const AlgebraContext& ctx = eval.ctx();
  SweepSummary summary;
  summary.m = ctx.m;
  summary.d_max = eval.d_max();
  summary.grading_bound = options.grading_bound;
  summary.weight_bound = options.weight_bound;

  // Depth demanded in the worst case by these bounds; refuse early rather
  // than fail midway through.
  const int worst_d =
      (options.grading_bound / 2 + options.weight_bound) / ctx.m;
  if (worst_d > eval.d_max()) {
    summary.aborted = true;
    summary.abort_reason =
        "bounds force d up to " + std::to_string(worst_d) +
        " but the index holds d <= " + std::to_string(eval.d_max());
    return summary;
  }

  const std::vector<BasisPath> paths =
      basis_paths_up_to(ctx, options.grading_bound);
  std::vector<int> path_dbl(paths.size());
  for (size_t i = 0; i < paths.size(); ++i) {
    path_dbl[i] = dbl_shadow_total(ctx, paths[i]);
  }
  std::vector<std::vector<int>> weights;
  {
    std::vector<int> w(ctx.m, 0);
    auto rec = [&](auto&& self, int i, int remaining) -> void {
      if (i == ctx.m) {
        weights.push_back(w);
        return;
      }
      for (w[i] = 0; w[i] <= remaining; ++w[i]) {
        self(self, i + 1, remaining - w[i]);
      }
      w[i] = 0;
    };
    rec(rec, 0, options.weight_bound);
  }

  struct Item {
    RelationInstance inst;
    std::vector<int> dbl;
  };
  const size_t batch_size = 2048;
  std::vector<Item> batch;
  batch.reserve(batch_size);

  const int jobs = std::max(1, options.jobs);
  std::atomic<bool> abort_flag{false};
  std::atomic<bool> abort_reason_taken{false};
  std::string abort_reason;

  auto process_batch = [&]() {
    if (batch.empty()) return;
    std::vector<RelationReport> reports(batch.size());
    // 0 = untouched (abort hit first), 1 = skipped infeasible, 2 = checked.
    std::vector<char> status(batch.size(), 0);
    std::vector<AuditLog> logs(jobs);
    std::atomic<size_t> cursor{0};
    auto worker = [&](int job) {
      for (;;) {
        if (abort_flag.load()) return;
        size_t i = cursor.fetch_add(1);
        if (i >= batch.size()) return;
        const Item& item = batch[i];
        if (!instance_feasible(ctx, item.inst, item.dbl)) {
          status[i] = 1;
          continue;
        }
        RelationReport rep;
        rep.instance = item.inst;
        try {
          rep.sum = ainfty_sum(eval, item.inst, nullptr,
                               options.audit ? &logs[job] : nullptr);
        } catch (const BudgetError& e) {
          if (!abort_reason_taken.exchange(true)) abort_reason = e.what();
          abort_flag.store(true);
          return;
        }
        rep.pass = rep.sum.is_zero();
        if (!rep.pass) {
          // Recompute with the per-term trace retained.
          rep.terms.clear();
          ainfty_sum(eval, item.inst, &rep.terms, nullptr);
        }
        reports[i] = std::move(rep);
        status[i] = 2;
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
      for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < batch.size(); ++i) {
      if (status[i] == 0) continue;  // abort arrived before this instance
      ++summary.considered;
      if (status[i] == 1) {
        ++summary.skipped_infeasible;
        continue;
      }
      ++summary.checked;
      if (reports[i].pass) {
        ++summary.passed;
      } else {
        ++summary.failed;
      }
      sink(reports[i]);
    }
    for (const AuditLog& log : logs) {
      summary.audit.checked += log.checked;
      for (const std::string& v : log.violations) {
        summary.audit.violations.push_back(v);
      }
    }
    batch.clear();
  };

  // Instances in deterministic order: sequences by depth-first extension
  // over the sorted path list, each paired with every weight vector.
  std::vector<BasisPath> seq;
  std::vector<int> seq_dbl;
  auto emit = [&](auto&& self, int used) -> bool {
    if (!seq.empty()) {
      for (const auto& w : weights) {
        batch.push_back(Item{RelationInstance{ctx.m, w, seq}, seq_dbl});
        if (batch.size() >= batch_size) {
          process_batch();
          if (abort_flag.load()) return false;
        }
      }
    }
    for (size_t i = 0; i < paths.size(); ++i) {
      if (used + path_dbl[i] > options.grading_bound) continue;
      seq.push_back(paths[i]);
      seq_dbl.push_back(path_dbl[i]);
      bool keep_going = self(self, used + path_dbl[i]);
      seq.pop_back();
      seq_dbl.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  emit(emit, 0);
  process_batch();

  if (abort_flag.load()) {
    summary.aborted = true;
    summary.abort_reason = abort_reason;
  }
  return summary;
}

AuditLog audit_index(const AlgebraContext& ctx, const OperationIndex& idx) {
  AuditLog log;
  for (const auto& [key, values] : idx.entries) {
    ++log.checked;
    int total = 0;
    for (const BasisPath& p : key.inputs) total += dbl_shadow_total(ctx, p);
    const int wsum = weight_total(key.weight);
    const int n = static_cast<int>(key.inputs.size());
    for (const IndexValue& v : values) {
      if (2 * ctx.m * v.d != total + 2 * wsum) {
        log.violations.push_back("index entry violates the grading law");
      }
      if (n != 2 * ctx.m * v.d - 4 * v.d + 2 - 2 * wsum) {
        log.violations.push_back("index entry violates the leaf-count law");
      }
      if (v.iota != key.inputs.front().source) {
        log.violations.push_back("index entry root label differs from a_1");
      }
      if (v.multiplicity < 1 || v.witness.empty()) {
        log.violations.push_back("index entry lacks a witness");
      }
    }
    for (int i = 0; i + 1 < n; ++i) {
      if (concat(ctx, key.inputs[i], key.inputs[i + 1])) {
        log.violations.push_back("index entry with multiplyable neighbors");
      }
    }
  }
  return log;
}

std::string report_to_json(const AlgebraContext& ctx, const RelationReport& rep) {
  nlohmann::ordered_json j;
  j["m"] = rep.instance.m;
  j["weight"] = rep.instance.weight;
  auto inputs = nlohmann::ordered_json::array();
  for (const BasisPath& p : rep.instance.inputs) {
    inputs.push_back(print_path(ctx, p));
  }
  j["inputs"] = std::move(inputs);
  j["sum"] = print_element(ctx, rep.sum);
  j["pass"] = rep.pass;
  if (!rep.pass) {
    auto terms = nlohmann::ordered_json::array();
    for (const TermTrace& t : rep.terms) {
      terms.push_back({{"r", t.r},
                       {"s", t.s},
                       {"t", t.t},
                       {"u", t.u},
                       {"v", t.v},
                       {"inner", t.inner},
                       {"outer", t.outer},
                       {"sign", t.sign}});
    }
    j["terms"] = std::move(terms);
  }
  return j.dump();
}

std::string summary_to_json(const SweepSummary& s) {
  nlohmann::ordered_json j;
  j["summary"] = {{"m", s.m},
                  {"d_max", s.d_max},
                  {"grading_bound", s.grading_bound},
                  {"weight_bound", s.weight_bound},
                  {"considered", s.considered},
                  {"checked", s.checked},
                  {"passed", s.passed},
                  {"failed", s.failed},
                  {"skipped_infeasible", s.skipped_infeasible},
                  {"aborted", s.aborted},
                  {"abort_reason", s.abort_reason},
                  {"audited_operations", s.audit.checked},
                  {"audit_violations", s.audit.violations.size()}};
  return j.dump();
}

}  // namespace cm1
