#include "cm1/enumerate.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "cm1/parse.hpp"

namespace cm1 {

namespace {

// Backtracking over partial rotation-system gluings.  Out-slots are
// processed in lexicographic order; each is matched to an unused in-slot of
// the same label (possibly on the same vertex, giving a loop) or left for a
// boundary leaf.  Directed cycles through two or more vertices are pruned
// as soon as they would close; connectivity, the disk-planarity check and
// internal-face admissibility run on each completed gluing.
struct Search {
  const AlgebraContext& ctx;
  int m, d;
  std::vector<std::vector<bool>> reach;  // reach[a][b]: a -> ... -> b
  std::vector<std::vector<int>> in_used; // [label-1][v]
  std::vector<std::pair<SlotRef, SlotRef>> edges;
  std::map<CanonicalKey, TilingGraph> found;

  Search(const AlgebraContext& c, int d_) : ctx(c), m(c.m), d(d_) {
    reach.assign(d, std::vector<bool>(d, false));
    for (int v = 0; v < d; ++v) reach[v][v] = true;
    in_used.assign(m - 1, std::vector<int>(d, 0));
  }

  void add_reach(int a, int b) {
    // Everything reaching a now reaches everything b reaches.
    for (int x = 0; x < d; ++x) {
      if (!reach[x][a]) continue;
      for (int y = 0; y < d; ++y) {
        if (reach[b][y]) reach[x][y] = true;
      }
    }
  }

  void finish() {
    // Connectivity of the d vertices through vertex-to-vertex edges.
    if (d > 1) {
      std::vector<int> comp(d);
      std::iota(comp.begin(), comp.end(), 0);
      auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
      };
      for (const auto& [a, b] : edges) {
        comp[find(a.v)] = find(b.v);
      }
      for (int v = 1; v < d; ++v) {
        if (find(v) != find(0)) return;
      }
    }
    TilingGraph g;
    if (!build_centered(m, d, edges, g)) return;
    ValidityReport rep = validate(g);
    if (!rep.valid()) return;
    for (int r = 0; r < g.num_leaves(); ++r) {
      TilingGraph rooted = rerooted(g, r);
      found.emplace(canonical_form(rooted), std::move(rooted));
    }
  }

  void step(int pos) {
    if (pos == d * (m - 1)) {
      finish();
      return;
    }
    int v = pos / (m - 1);
    int lab = pos % (m - 1) + 1;
    SlotRef from{v, out_slot(m, lab)};
    // Option 1: leave the slot for a boundary leaf.
    step(pos + 1);
    // Option 2: glue to an in-slot of the same label.
    for (int w = 0; w < d; ++w) {
      if (in_used[lab - 1][w]) continue;
      if (w != v && reach[w][v]) continue;  // would close a directed cycle
      auto saved_reach = reach;
      in_used[lab - 1][w] = 1;
      if (w != v) add_reach(v, w);
      edges.push_back({from, SlotRef{w, in_slot(m, lab)}});
      step(pos + 1);
      edges.pop_back();
      in_used[lab - 1][w] = 0;
      reach = std::move(saved_reach);
    }
  }
};

}  // namespace

std::vector<TilingGraph> enumerate_centered(const AlgebraContext& ctx, int d,
                                            int cap) {
  if (d < 1) throw std::invalid_argument("enumerate_centered: d must be >= 1");
  if (d > cap) {
    throw BudgetError(d, cap,
                      "enumerate_centered: d = " + std::to_string(d) +
                          " exceeds the budget cap " + std::to_string(cap));
  }
  Search s(ctx, d);
  s.step(0);
  std::vector<TilingGraph> out;
  out.reserve(s.found.size());
  for (auto& [key, g] : s.found) out.push_back(std::move(g));
  return out;
}

OperationIndex build_index(const AlgebraContext& ctx, int d_max, int cap) {
  OperationIndex idx;
  idx.m = ctx.m;
  idx.d_max = d_max;
  for (int d = 1; d <= d_max; ++d) {
    for (const TilingGraph& g : enumerate_centered(ctx, d, cap)) {
      Reading r = algebra_sequence(ctx, g);
      std::vector<int> w = weight_vector(g);
      int total = 0;
      for (const BasisPath& p : r.inputs) total += dbl_shadow_total(ctx, p);
      int wsum = std::accumulate(w.begin(), w.end(), 0);
      if (2 * ctx.m * d != total + 2 * wsum) {
        throw std::logic_error("build_index: grading law violated");
      }
      int n = static_cast<int>(r.inputs.size());
      if (n != 2 * ctx.m * d - 4 * d + 2 - 2 * wsum) {
        throw std::logic_error("build_index: leaf-count law violated");
      }
      IndexKey key{std::move(r.inputs), std::move(w)};
      auto& values = idx.entries[key];
      bool merged = false;
      for (IndexValue& val : values) {
        if (val.iota == r.iota && val.d == d) {
          ++val.multiplicity;
          merged = true;
          break;
        }
      }
      if (!merged) values.push_back({r.iota, d, 1, canonical_form(g)});
    }
  }
  return idx;
}

std::string index_to_json_string(const OperationIndex& idx) {
  AlgebraContext ctx = make_algebra(idx.m);
  nlohmann::ordered_json j;
  j["format_version"] = kIndexFormatVersion;
  j["m"] = idx.m;
  j["d_max"] = idx.d_max;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, values] : idx.entries) {
    nlohmann::ordered_json e;
    auto inputs = nlohmann::ordered_json::array();
    for (const BasisPath& p : key.inputs) inputs.push_back(print_path(ctx, p));
    e["inputs"] = std::move(inputs);
    e["weight"] = key.weight;
    auto vals = nlohmann::ordered_json::array();
    for (const IndexValue& v : values) {
      vals.push_back({{"iota", v.iota},
                      {"d", v.d},
                      {"multiplicity", v.multiplicity},
                      {"witness", v.witness}});
    }
    e["values"] = std::move(vals);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump(1);
}

OperationIndex index_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorruptIndexError(std::string("index parse error: ") + e.what());
  }
  OperationIndex idx;
  try {
    int version = j.at("format_version").get<int>();
    if (version != kIndexFormatVersion) {
      throw VersionError("index format version " + std::to_string(version) +
                         " does not match expected " +
                         std::to_string(kIndexFormatVersion));
    }
    idx.m = j.at("m").get<int>();
    idx.d_max = j.at("d_max").get<int>();
    AlgebraContext ctx = make_algebra(idx.m);
    for (const auto& e : j.at("entries")) {
      IndexKey key;
      for (const auto& s : e.at("inputs")) {
        key.inputs.push_back(parse_path(ctx, s.get<std::string>()));
      }
      key.weight = e.at("weight").get<std::vector<int>>();
      std::vector<IndexValue> values;
      for (const auto& v : e.at("values")) {
        values.push_back({v.at("iota").get<int>(), v.at("d").get<int>(),
                          v.at("multiplicity").get<long long>(),
                          v.at("witness").get<std::string>()});
      }
      idx.entries.emplace(std::move(key), std::move(values));
    }
  } catch (const VersionError&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptIndexError(std::string("index malformed: ") + e.what());
  }
  return idx;
}

void store_index(const OperationIndex& idx, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IndexFileError("cannot open " + path + " for writing");
  out << index_to_json_string(idx);
  if (!out) throw IndexFileError("write to " + path + " failed");
}

OperationIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFileError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return index_from_json_string(buf.str());
}

}  // namespace cm1
