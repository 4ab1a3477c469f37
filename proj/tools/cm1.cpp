// Command-line front end: products, operation evaluation, graph
// enumeration/export, verification sweeps, and index caching.
//
// Exit codes: 0 success, 1 failure/counterexample, 2 budget abort,
// 3 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "cm1/enumerate.hpp"
#include "cm1/operations.hpp"
#include "cm1/parse.hpp"
#include "cm1/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 3;

std::string default_cache_dir() {
  if (const char* env = std::getenv("CM1_CACHE_DIR")) return env;
  return ".cm1-cache";
}

std::string cache_file(const std::string& dir, int m, int d_max) {
  return dir + "/index-m" + std::to_string(m) + "-d" + std::to_string(d_max) +
         "-v" + std::to_string(cm1::kIndexFormatVersion) + ".json";
}

// Loads the cached index for (m, d_max, format version), building and
// storing it when absent or unreadable.
cm1::OperationIndex obtain_index(const cm1::AlgebraContext& ctx, int d_max,
                                 const std::string& cache_dir) {
  std::string path = cache_file(cache_dir, ctx.m, d_max);
  if (std::filesystem::exists(path)) {
    try {
      cm1::OperationIndex idx = cm1::load_index(path);
      if (idx.m == ctx.m && idx.d_max == d_max) return idx;
    } catch (const cm1::IndexFileError&) {
      // fall through to a rebuild
    }
  }
  cm1::OperationIndex idx =
      cm1::build_index(ctx, d_max, std::max(d_max, cm1::kDefaultEnumerationCap));
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  if (!ec) {
    try {
      cm1::store_index(idx, path);
    } catch (const cm1::IndexFileError&) {
      // caching is best effort
    }
  }
  return idx;
}

std::vector<int> parse_weight(const cm1::AlgebraContext& ctx,
                              const std::string& text) {
  std::vector<int> w;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    w.push_back(std::stoi(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(w.size()) != ctx.m) {
    throw std::invalid_argument("weight vector must have " +
                                std::to_string(ctx.m) + " components");
  }
  for (int x : w) {
    if (x < 0) throw std::invalid_argument("weight components must be >= 0");
  }
  return w;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial weighted operations on the bordered algebra"};
  app.require_subcommand(1);

  int m = 0;
  app.add_option("-m,--m", m, "algebra parameter (>= 3)")->required();

  auto* mul = app.add_subcommand("mul", "multiply two elements");
  std::string expr_a, expr_b;
  mul->add_option("a", expr_a, "left factor")->required();
  mul->add_option("b", expr_b, "right factor")->required();

  auto* gr = app.add_subcommand("gradings", "shadow and gr gradings of an element");
  std::string gr_expr;
  gr->add_option("expr", gr_expr, "element")->required();

  auto* en = app.add_subcommand("enumerate", "enumerate centered tiling graphs");
  int en_d = 1, en_cap = cm1::kDefaultEnumerationCap;
  std::string en_format = "text", en_out;
  en->add_option("-d,--d", en_d, "number of internal vertices")->required();
  en->add_option("--cap", en_cap, "enumeration budget cap on d");
  en->add_option("--format", en_format, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  en->add_option("-o,--output", en_out, "output file (default stdout)");

  auto* op = app.add_subcommand("op", "evaluate a weighted operation");
  std::string op_weight;
  std::vector<std::string> op_inputs;
  int op_dmax = 3;
  std::string op_cache = default_cache_dir();
  op->add_option("-w,--weight", op_weight, "comma-separated weight vector")
      ->required();
  op->add_option("inputs", op_inputs, "input elements");
  op->add_option("--d-max", op_dmax, "index depth");
  op->add_option("--cache", op_cache, "index cache directory");

  auto* ib = app.add_subcommand("index-build", "build and store the operation index");
  int ib_dmax = 3;
  std::string ib_cache = default_cache_dir();
  ib->add_option("--d-max", ib_dmax, "index depth")->required();
  ib->add_option("--cache", ib_cache, "index cache directory");

  auto* ve = app.add_subcommand("verify", "sweep the structure relation");
  int ve_gbound = 8, ve_wbound = 0, ve_dmax = 3, ve_jobs = 0;
  std::string ve_cache = default_cache_dir(), ve_out;
  ve->add_option("--grading-bound", ve_gbound, "doubled shadow bound on inputs");
  ve->add_option("--weight-bound", ve_wbound, "bound on the weight total");
  ve->add_option("-d,--d-max", ve_dmax, "index depth");
  ve->add_option("--jobs", ve_jobs, "worker threads (0 = hardware)");
  ve->add_option("--cache", ve_cache, "index cache directory");
  ve->add_option("-o,--output", ve_out, "report file (JSON lines; default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cm1::AlgebraContext ctx = cm1::make_algebra(m);

    if (*mul) {
      cm1::AlgebraElement a = cm1::parse_element(ctx, expr_a);
      cm1::AlgebraElement b = cm1::parse_element(ctx, expr_b);
      std::cout << cm1::print_element(ctx, cm1::multiply(ctx, a, b)) << "\n";
      return kExitOk;
    }

    if (*gr) {
      cm1::AlgebraElement x = cm1::parse_element(ctx, gr_expr);
      cm1::GradingInfo info = cm1::gradings(ctx, x);
      if (info.is_zero) {
        std::cout << "zero element\n";
        return kExitOk;
      }
      std::cout << "shadow: "
                << (info.dbl_shadow ? cm1::format_shadow(*info.dbl_shadow)
                                    : std::string("nonhomogeneous"))
                << "\n";
      std::cout << "gr: "
                << (info.gr ? std::to_string(*info.gr)
                            : std::string("nonhomogeneous"))
                << "\n";
      return kExitOk;
    }

    if (*en) {
      auto graphs = cm1::enumerate_centered(ctx, en_d, en_cap);
      std::ofstream file;
      std::ostream& out = open_output(en_out, file);
      if (en_format == "json") {
        out << "[\n";
        for (size_t i = 0; i < graphs.size(); ++i) {
          out << cm1::to_json_string(graphs[i]);
          if (i + 1 < graphs.size()) out << ",";
          out << "\n";
        }
        out << "]\n";
      } else if (en_format == "dot") {
        for (const auto& g : graphs) out << cm1::to_dot(g);
      } else {
        for (const auto& g : graphs) {
          cm1::Reading r = cm1::algebra_sequence(ctx, g);
          auto w = cm1::weight_vector(g);
          out << "d=" << g.num_vertices() << " n=" << g.num_leaves() << " w=(";
          for (size_t i = 0; i < w.size(); ++i) {
            out << (i ? "," : "") << w[i];
          }
          out << ") iota=I" << r.iota << " inputs=";
          for (size_t i = 0; i < r.inputs.size(); ++i) {
            out << (i ? "," : "") << cm1::print_path(ctx, r.inputs[i]);
          }
          out << "\n";
        }
      }
      std::cerr << graphs.size() << " graphs\n";
      return kExitOk;
    }

    if (*op) {
      auto weight = parse_weight(ctx, op_weight);
      cm1::Evaluator eval(ctx, obtain_index(ctx, op_dmax, op_cache));
      std::vector<cm1::AlgebraElement> inputs;
      for (const std::string& s : op_inputs) {
        inputs.push_back(cm1::parse_element(ctx, s));
      }
      std::cout << cm1::print_element(ctx, eval.mu(weight, inputs)) << "\n";
      return kExitOk;
    }

    if (*ib) {
      cm1::OperationIndex idx = obtain_index(ctx, ib_dmax, ib_cache);
      std::cout << "index m=" << idx.m << " d_max=" << idx.d_max << " entries="
                << idx.entries.size() << " cached at "
                << cache_file(ib_cache, idx.m, idx.d_max) << "\n";
      return kExitOk;
    }

    if (*ve) {
      cm1::Evaluator eval(ctx, obtain_index(ctx, ve_dmax, ve_cache));
      cm1::SweepOptions options;
      options.grading_bound = ve_gbound;
      options.weight_bound = ve_wbound;
      options.jobs = ve_jobs > 0
                         ? ve_jobs
                         : static_cast<int>(std::max(
                               1u, std::thread::hardware_concurrency()));
      options.audit = true;
      std::ofstream file;
      std::ostream& out = open_output(ve_out, file);
      cm1::SweepSummary summary =
          cm1::sweep(eval, options, [&](const cm1::RelationReport& rep) {
            out << cm1::report_to_json(ctx, rep) << "\n";
          });
      out << cm1::summary_to_json(summary) << "\n";
      if (summary.aborted) {
        std::cerr << "aborted: " << summary.abort_reason << "\n";
        return kExitBudget;
      }
      if (summary.failed > 0 || !summary.audit.violations.empty()) {
        return kExitFail;
      }
      return kExitOk;
    }
  } catch (const cm1::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cm1::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
