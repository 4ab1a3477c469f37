#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "cm1/enumerate.hpp"
#include "cm1/parse.hpp"
#include "cm1/verify.hpp"

using namespace cm1;

namespace {

// Independent census oracle.  For each edge label it walks the full
// odometer of out-slot targets (leaf or any vertex), filters non-injective
// choices, assembles the half-edge structure on its own, and keeps what
// validate() accepts.  No search pruning, no sharing with the generator.
// Vertex relabelings of one gluing land on the same canonical key, so the
// census is the key set.
std::set<CanonicalKey> oracle_census(const AlgebraContext& ctx, int d) {
  const int m = ctx.m;
  const int deg = vertex_degree(m);
  std::set<CanonicalKey> keys;
  // choice[(label-1)*d + v] in [-1, d): target vertex of v's out-label edge.
  const int n_choices = (m - 1) * d;
  std::vector<int> choice(n_choices, -1);
  for (;;) {
    bool injective = true;
    for (int lab = 1; lab <= m - 1 && injective; ++lab) {
      std::vector<bool> used(d, false);
      for (int v = 0; v < d; ++v) {
        int c = choice[(lab - 1) * d + v];
        if (c >= 0) {
          if (used[c]) injective = false;
          used[c] = true;
        }
      }
    }
    if (injective) {
      TilingGraph g;
      g.m = m;
      g.rotation.assign(d, std::vector<int>(deg));
      int h_count = d * deg;
      for (int v = 0; v < d; ++v) {
        for (int p = 0; p < deg; ++p) {
          g.rotation[v][p] = v * deg + p;
        }
      }
      g.mate.assign(h_count, -1);
      g.label.resize(h_count);
      g.is_head.resize(h_count);
      for (int v = 0; v < d; ++v) {
        for (int p = 0; p < deg; ++p) {
          g.label[v * deg + p] = slot_label(m, p);
          g.is_head[v * deg + p] = slot_is_in(m, p) ? 1 : 0;
        }
      }
      for (int lab = 1; lab <= m - 1; ++lab) {
        for (int v = 0; v < d; ++v) {
          int c = choice[(lab - 1) * d + v];
          if (c < 0) continue;
          int a = v * deg + out_slot(m, lab);
          int b = c * deg + in_slot(m, lab);
          g.mate[a] = b;
          g.mate[b] = a;
        }
      }
      for (int h = 0; h < h_count; ++h) {
        if (g.mate[h] != -1) continue;
        int leaf = static_cast<int>(g.mate.size());
        g.mate.push_back(h);
        g.label.push_back(g.label[h]);
        g.is_head.push_back(g.is_head[h] ? 0 : 1);
        g.mate[h] = leaf;
        g.boundary.push_back(leaf);
      }
      if (!g.boundary.empty()) {
        // Order the boundary by the face walk so the stored-order axiom can
        // hold; if the leaves sit on several faces any order fails anyway.
        std::vector<int> ordered;
        {
          std::vector<int> slot_of(g.mate.size(), -1);
          for (int j = 0; j < g.num_leaves(); ++j) slot_of[g.boundary[j]] = j;
          int start = g.boundary[0];
          int cur = start;
          do {
            int k = g.mate[cur];
            if (slot_of[k] >= 0) {
              ordered.push_back(k);
              cur = k;
            } else {
              int v = k / deg, p = k % deg;
              cur = g.rotation[v][(p + 1) % deg];
            }
          } while (cur != start && ordered.size() <= g.mate.size());
          if (!ordered.empty() && ordered.front() != g.boundary[0]) {
            std::rotate(ordered.begin(),
                        std::find(ordered.begin(), ordered.end(), g.boundary[0]),
                        ordered.end());
          }
        }
        if (ordered.size() == g.boundary.size()) {
          g.boundary = ordered;
          for (int r = 0; r < g.num_leaves(); ++r) {
            TilingGraph rooted = rerooted(g, r);
            if (validate(rooted).valid()) {
              keys.insert(canonical_form(rooted));
            }
          }
        }
      }
    }
    int i = n_choices - 1;
    while (i >= 0 && ++choice[i] == d) choice[i--] = -1;
    if (i < 0) break;
  }
  return keys;
}

}  // namespace

TEST_CASE("enumeration agrees with the census oracle") {
  // Census sizes fixed by the oracle: (m, d) -> rooted graph count.
  const std::map<std::pair<int, int>, size_t> expected = {
      {{3, 1}, 8}, {{3, 2}, 36}, {{4, 1}, 20}, {{4, 2}, 258}};
  for (auto [md, count] : expected) {
    auto [m, d] = md;
    auto ctx = make_algebra(m);
    auto graphs = enumerate_centered(ctx, d);
    std::set<CanonicalKey> mine;
    for (const auto& g : graphs) mine.insert(canonical_form(g));
    CHECK(mine.size() == graphs.size());  // duplicate free
    auto oracle = oracle_census(ctx, d);
    CHECK(mine == oracle);
    CHECK(mine.size() == count);
  }
}

TEST_CASE("every enumerated graph is valid and obeys the grading laws") {
  for (int m : {3, 4}) {
    auto ctx = make_algebra(m);
    for (int d = 1; d <= 2; ++d) {
      for (const auto& g : enumerate_centered(ctx, d)) {
        CHECK(validate(g).valid());
        CHECK(g.num_vertices() == d);
        Reading r = algebra_sequence(ctx, g);
        auto w = weight_vector(g);
        int wsum = std::accumulate(w.begin(), w.end(), 0);
        int total = 0;
        for (const auto& p : r.inputs) total += dbl_shadow_total(ctx, p);
        CHECK(2 * m * d == total + 2 * wsum);
        int n = static_cast<int>(r.inputs.size());
        CHECK(n == 2 * m * d - 4 * d + 2 - 2 * wsum);
        CHECK(n % 2 == 0);
      }
    }
  }
}

TEST_CASE("the d=2 census contains the worked ten-input tree") {
  auto ctx = make_algebra(4);
  TilingGraph tree;
  REQUIRE(build_centered(4, 2, {{{1, out_slot(4, 2)}, {0, in_slot(4, 2)}}}, tree));
  int root = -1;
  int want = tree.mate[tree.rotation[1][in_slot(4, 1)]];
  for (int j = 0; j < tree.num_leaves(); ++j) {
    if (tree.boundary[j] == want) root = j;
  }
  REQUIRE(root >= 0);
  CanonicalKey key = canonical_form(rerooted(tree, root));
  bool found = false;
  for (const auto& g : enumerate_centered(ctx, 2)) {
    if (canonical_form(g) == key) found = true;
  }
  CHECK(found);
}

TEST_CASE("the d=1 star realizes the distinguished operation") {
  auto ctx = make_algebra(4);
  bool found = false;
  for (const auto& g : enumerate_centered(ctx, 1)) {
    Reading r = algebra_sequence(ctx, g);
    std::vector<std::string> names;
    for (const auto& p : r.inputs) names.push_back(print_path(ctx, p));
    if (names == std::vector<std::string>{"U1", "R2", "R3", "U4", "L3", "L2"}) {
      found = true;
      CHECK(r.iota == 1);
      CHECK(weight_vector(g) == std::vector<int>{0, 0, 0, 0});
    }
  }
  CHECK(found);
}

TEST_CASE("budget cap raises instead of truncating") {
  auto ctx = make_algebra(3);
  CHECK_THROWS_AS(enumerate_centered(ctx, 99), BudgetError);
  CHECK_THROWS_AS(enumerate_centered(ctx, 0), std::invalid_argument);
  try {
    enumerate_centered(ctx, 99);
  } catch (const BudgetError& e) {
    CHECK(e.required == 99);
    CHECK(e.budget == kDefaultEnumerationCap);
  }
}

TEST_CASE("index keys respect parity and arity laws") {
  auto ctx = make_algebra(4);
  OperationIndex idx = build_index(ctx, 2);
  CHECK(idx.m == 4);
  CHECK(idx.d_max == 2);
  CHECK(!idx.entries.empty());
  for (const auto& [key, values] : idx.entries) {
    CHECK(key.inputs.size() % 2 == 0);
    CHECK(key.inputs.size() >= 2);
    for (const auto& v : values) {
      CHECK(v.iota == key.inputs.front().source);
      CHECK(v.multiplicity >= 1);
    }
  }
  AuditLog log = audit_index(ctx, idx);
  CHECK(log.violations.empty());
}

TEST_CASE("index persistence round trips and rejects bad files") {
  auto ctx = make_algebra(3);
  OperationIndex idx = build_index(ctx, 2);
  auto dir = std::filesystem::temp_directory_path();
  std::string path = (dir / "cm1_test_index.json").string();
  store_index(idx, path);
  OperationIndex back = load_index(path);
  CHECK(back == idx);
  // Byte-exact re-store.
  std::string again = index_to_json_string(back);
  CHECK(again == index_to_json_string(idx));

  // Version mismatch.
  std::string text = again;
  auto vpos = text.find("\"format_version\": 1");
  REQUIRE(vpos != std::string::npos);
  std::string wrong = text;
  wrong.replace(vpos, 19, "\"format_version\": 9");
  CHECK_THROWS_AS(index_from_json_string(wrong), VersionError);

  // Truncation.
  CHECK_THROWS_AS(index_from_json_string(text.substr(0, text.size() / 2)),
                  CorruptIndexError);
  CHECK_THROWS_AS(load_index((dir / "cm1_absent.json").string()),
                  IndexFileError);
  std::filesystem::remove(path);
}

TEST_CASE("multiplicities at depth three") {
  // Observed census facts: every key holds a single (iota, d) value, and
  // rooted-graph multiplicities reach 2 from depth 3 on (so some structure
  // constants exceed 1 over the integers).
  for (int m : {3, 4}) {
    auto ctx = make_algebra(m);
    OperationIndex idx = build_index(ctx, 3);
    long long max_mult = 0;
    for (const auto& [key, values] : idx.entries) {
      CHECK(values.size() == 1);
      for (const auto& v : values) max_mult = std::max(max_mult, v.multiplicity);
    }
    CHECK(max_mult == 2);
  }
}

TEST_CASE("repeated builds are byte identical") {
  auto ctx = make_algebra(4);
  OperationIndex a = build_index(ctx, 2);
  OperationIndex b = build_index(ctx, 2);
  CHECK(index_to_json_string(a) == index_to_json_string(b));
}
