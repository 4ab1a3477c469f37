#include "doctest.h"

#include "cm1/parse.hpp"
#include "cm1/verify.hpp"

using namespace cm1;

namespace {

struct Fixture {
  AlgebraContext ctx;
  Evaluator eval;
  explicit Fixture(int m, int d_max = 3)
      : ctx(make_algebra(m)), eval(ctx, build_index(ctx, d_max)) {}

  RelationInstance inst(const std::vector<int>& w,
                        const std::vector<std::string>& paths) const {
    RelationInstance i;
    i.m = ctx.m;
    i.weight = w;
    for (const auto& s : paths) i.inputs.push_back(parse_path(ctx, s));
    return i;
  }
};

}  // namespace

TEST_CASE("associativity instances vanish") {
  Fixture f(4, 1);
  CHECK(ainfty_sum(f.eval, f.inst({0, 0, 0, 0}, {"R2", "L2", "R2"})).is_zero());
  CHECK(ainfty_sum(f.eval, f.inst({0, 0, 0, 0}, {"U1", "U1", "U1"})).is_zero());
}

TEST_CASE("the composite-pair instance vanishes with a visible cancellation") {
  Fixture f(3);
  // The pure-component instance behind the worked composite pair: the two
  // middle inputs are the matching components of R2*L2 + L2*R2.
  auto instance = f.inst({0, 0, 0}, {"U1", "R2*L2", "U1^2", "R2", "U3", "L2*R2",
                                     "U3", "U3", "L2"});
  std::vector<TermTrace> trace;
  CHECK(ainfty_sum(f.eval, instance, &trace).is_zero());
  // Exactly two composite terms survive, with opposite signs.
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].sign * trace[1].sign == -1);
  CHECK(trace[0].outer == trace[1].outer);
}

TEST_CASE("curvature insertions cancel across the ends") {
  Fixture f(4);
  auto instance = f.inst(
      {1, 0, 0, 0},
      {"R2", "R3", "U4", "L3*R3", "U4", "L3", "L2", "U1", "R2*L2"});
  std::vector<TermTrace> trace;
  CHECK(ainfty_sum(f.eval, instance, &trace).is_zero());
  REQUIRE(trace.size() == 2);
  for (const TermTrace& t : trace) {
    CHECK(t.s == 0);
    CHECK(t.inner == "U1");
    CHECK(t.outer == "t^2*I1");
  }
  CHECK(trace[0].sign + trace[1].sign == 0);
}

TEST_CASE("unitality instances cancel through the two unit terms") {
  Fixture f(4, 1);
  for (auto paths : {std::vector<std::string>{"I1", "U1", "U1"},
                     std::vector<std::string>{"U1", "U1", "I1"},
                     std::vector<std::string>{"U1", "I1", "U1"}}) {
    CHECK(ainfty_sum(f.eval, f.inst({0, 0, 0, 0}, paths)).is_zero());
  }
  // With a unit at the far end, the only surviving terms are the two
  // binary unit terms, and they cancel.
  {
    std::vector<TermTrace> trace;
    CHECK(ainfty_sum(f.eval, f.inst({0, 0, 0, 0}, {"I1", "U1", "U1"}), &trace)
              .is_zero());
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].s == 2);
    CHECK(trace[1].s == 2);
    CHECK(trace[0].outer == trace[1].outer);
    CHECK(trace[0].sign + trace[1].sign == 0);
  }
  // With idempotents allowed anywhere the relation still closes.
  CHECK(ainfty_sum(f.eval,
                   f.inst({0, 0, 0, 0}, {"I2", "R2", "L2", "R2"})).is_zero());
}

TEST_CASE("budget errors identify the offending term") {
  Fixture f(4, 1);
  auto instance =
      f.inst({0, 0, 0, 0}, {"U1", "R2", "R3", "U4", "L3*R3", "U4", "L3", "L2",
                            "U1", "R2*L2", "U1"});
  CHECK_THROWS_AS(ainfty_sum(f.eval, instance), BudgetError);
  try {
    ainfty_sum(f.eval, instance);
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("term") != std::string::npos);
  }
}

TEST_CASE("audit flags violations on corrupted outputs") {
  Fixture f(3, 1);
  AuditLog log;
  auto u1 = parse_element(f.ctx, "U1");
  // A fabricated nonzero odd-arity output must be flagged.
  audit_operation(f.ctx, {0, 0, 0}, {u1, u1, u1}, u1, log);
  CHECK(!log.violations.empty());
  AuditLog ok;
  audit_operation(f.ctx, {0, 0, 0},
                  {parse_element(f.ctx, "U1"), parse_element(f.ctx, "R2"),
                   parse_element(f.ctx, "U3"), parse_element(f.ctx, "L2")},
                  parse_element(f.ctx, "t*I1"), ok);
  CHECK(ok.violations.empty());
  // Wrong t-power: breaks both conservation laws.
  AuditLog bad;
  audit_operation(f.ctx, {0, 0, 0},
                  {parse_element(f.ctx, "U1"), parse_element(f.ctx, "R2"),
                   parse_element(f.ctx, "U3"), parse_element(f.ctx, "L2")},
                  parse_element(f.ctx, "t^2*I1"), bad);
  CHECK(bad.violations.size() == 2);
}

TEST_CASE("small sweeps pass and count every instance") {
  Fixture f(3, 2);
  SweepOptions options;
  options.grading_bound = 5;
  options.weight_bound = 1;
  long long reports = 0;
  SweepSummary s = sweep(f.eval, options, [&](const RelationReport& rep) {
    ++reports;
    CHECK(rep.pass);
  });
  CHECK(!s.aborted);
  CHECK(s.failed == 0);
  CHECK(s.checked == reports);
  CHECK(s.considered == s.checked + s.skipped_infeasible);
  CHECK(s.checked > 0);
  CHECK(s.skipped_infeasible > 0);

  // The feasibility screen never hides a nonzero sum: every skipped
  // instance evaluates to zero outright.
  std::vector<BasisPath> paths = basis_paths_up_to(f.ctx, 3);
  std::vector<std::vector<int>> weights = {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}};
  for (const auto& w : weights) {
    for (const auto& a : paths) {
      for (const auto& b : paths) {
        RelationInstance inst{3, w, {a, b}};
        CHECK(ainfty_sum(f.eval, inst).is_zero());
      }
    }
  }
}

TEST_CASE("sweeps are deterministic across thread counts") {
  Fixture f(3, 2);
  auto run = [&](int jobs) {
    SweepOptions options;
    options.grading_bound = 6;
    options.weight_bound = 1;
    options.jobs = jobs;
    std::string log;
    SweepSummary s = sweep(f.eval, options, [&](const RelationReport& rep) {
      log += report_to_json(f.ctx, rep);
      log += '\n';
    });
    log += summary_to_json(s);
    return log;
  };
  CHECK(run(1) == run(2));
}

TEST_CASE("sweeps abort on insufficient depth") {
  Fixture f(3, 0);
  SweepOptions options;
  options.grading_bound = 8;
  options.weight_bound = 0;
  SweepSummary s =
      sweep(f.eval, options, [](const RelationReport&) { CHECK(false); });
  CHECK(s.aborted);
  CHECK(!s.abort_reason.empty());
}

TEST_CASE("structure constants above one cancel with signs") {
  // Two distinct rooted graphs realize this key, so the count carries
  // coefficient 2; the signed relation must still close around it.
  Fixture f(3);
  std::vector<BasisPath> key;
  for (const char* p : {"U1^2", "R2*L2*R2", "U3^2", "L2*R2*L2"}) {
    key.push_back(parse_path(f.ctx, p));
  }
  CHECK(f.eval.c({1, 0, 1}, key) == parse_element(f.ctx, "2*t^3*I1"));
  std::vector<std::vector<std::string>> cases = {
      {"U1^2", "R2*L2*R2", "U3^2", "L2*R2*L2"},
      {"U1", "U1", "R2*L2*R2", "U3^2", "L2*R2*L2"},
      {"U1^2", "R2*L2*R2", "U3", "U3", "L2*R2*L2"},
      {"U1^2", "R2", "L2*R2", "U3^2", "L2*R2*L2"},
  };
  std::vector<std::vector<int>> weights = {
      {1, 0, 1}, {1, 0, 0}, {0, 0, 1}, {0, 0, 0}};
  for (const auto& paths : cases) {
    for (const auto& w : weights) {
      CHECK(ainfty_sum(f.eval, f.inst(w, paths)).is_zero());
    }
  }
}

TEST_CASE("a small sweep passes at m = 5") {
  AlgebraContext ctx = make_algebra(5);
  Evaluator eval(ctx, build_index(ctx, 1));
  SweepOptions options;
  options.grading_bound = 8;
  options.weight_bound = 1;
  options.jobs = 2;
  options.audit = true;
  SweepSummary s = sweep(eval, options, [](const RelationReport&) {});
  CHECK(!s.aborted);
  CHECK(s.failed == 0);
  CHECK(s.checked > 0);
  CHECK(s.audit.violations.empty());
}

TEST_CASE("report lines are well formed") {
  Fixture f(3, 1);
  RelationReport rep;
  rep.instance = f.inst({0, 0, 1}, {"U1", "R2*L2"});
  rep.sum = AlgebraElement::zero(3);
  rep.pass = true;
  std::string line = report_to_json(f.ctx, rep);
  CHECK(line.find("\"pass\":true") != std::string::npos);
  CHECK(line.find("R2*L2") != std::string::npos);
  SweepSummary s;
  s.checked = 7;
  CHECK(summary_to_json(s).find("\"checked\":7") != std::string::npos);
}
