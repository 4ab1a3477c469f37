#include "cm1/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace cm1 {

Gen corner_gen(int m, int p) {
  if (p < m - 2) return gen_r(p + 2);
  if (p == m - 2) return kGenUm;
  if (p <= 2 * m - 4) return gen_l(2 * m - 2 - p);
  return kGenU1;
}

namespace {

// Owner lookup per half-edge: vertex/slot for internal ends, leaf position
// otherwise.  Building it is the structural well-formedness check.
struct Layout {
  std::vector<int> owner_v;     // -1 for leaf half-edges
  std::vector<int> owner_slot;  // slot, or position in boundary for leaves
};

Layout build_layout(const TilingGraph& g) {
  const int h_count = g.num_half_edges();
  if (static_cast<int>(g.label.size()) != h_count ||
      static_cast<int>(g.is_head.size()) != h_count) {
    throw StructuralError("half-edge attribute arrays disagree in size");
  }
  Layout lay;
  lay.owner_v.assign(h_count, -2);
  lay.owner_slot.assign(h_count, -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int p = 0; p < static_cast<int>(g.rotation[v].size()); ++p) {
      int h = g.rotation[v][p];
      if (h < 0 || h >= h_count || lay.owner_v[h] != -2) {
        throw StructuralError("rotation table is not a partition of half-edges");
      }
      lay.owner_v[h] = v;
      lay.owner_slot[h] = p;
    }
  }
  for (int j = 0; j < g.num_leaves(); ++j) {
    int h = g.boundary[j];
    if (h < 0 || h >= h_count || lay.owner_v[h] != -2) {
      throw StructuralError("boundary list overlaps rotation table");
    }
    lay.owner_v[h] = -1;
    lay.owner_slot[h] = j;
  }
  for (int h = 0; h < h_count; ++h) {
    if (lay.owner_v[h] == -2) throw StructuralError("orphan half-edge");
    int k = g.mate[h];
    if (k < 0 || k >= h_count || k == h || g.mate[k] != h) {
      throw StructuralError("mate is not a fixed-point-free involution");
    }
  }
  return lay;
}

struct Event {
  bool bounce;
  int leaf;    // bounce: position in boundary
  int vertex;  // corner
  int pos;     // corner position
};

struct Orbit {
  std::vector<Event> events;
  int bounces = 0;
};

// Face walk: from half-edge h, cross to mate(h) and turn to the next slot
// counterclockwise; a leaf reflects the walk back.
std::vector<Orbit> trace_orbits(const TilingGraph& g, const Layout& lay) {
  const int h_count = g.num_half_edges();
  std::vector<bool> seen(h_count, false);
  std::vector<Orbit> orbits;
  for (int h0 = 0; h0 < h_count; ++h0) {
    if (seen[h0]) continue;
    Orbit orbit;
    int cur = h0;
    do {
      seen[cur] = true;
      int k = g.mate[cur];
      if (lay.owner_v[k] < 0) {
        orbit.events.push_back({true, lay.owner_slot[k], -1, -1});
        ++orbit.bounces;
        cur = k;
      } else {
        int v = lay.owner_v[k];
        int p = lay.owner_slot[k];
        orbit.events.push_back({false, -1, v, p});
        const auto& rot = g.rotation[v];
        cur = rot[(p + 1) % rot.size()];
      }
    } while (cur != h0);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

bool internal_face_type(const TilingGraph& g, const Orbit& o, int& type) {
  if (o.events.size() == 1) {
    Gen s = corner_gen(g.m, o.events[0].pos);
    if (s == kGenU1) {
      type = 1;
      return true;
    }
    if (s == kGenUm) {
      type = g.m;
      return true;
    }
    return false;
  }
  if (o.events.size() == 2) {
    Gen a = corner_gen(g.m, o.events[0].pos);
    Gen b = corner_gen(g.m, o.events[1].pos);
    if (a > b) std::swap(a, b);
    for (int i = 2; i <= g.m - 1; ++i) {
      if (a == gen_l(i) && b == gen_r(i)) {
        type = i;
        return true;
      }
    }
    return false;
  }
  return false;
}

// Rotates the bounce orbit to start at the bounce of `start_leaf` and cuts
// it into per-interval corner runs.
std::vector<std::vector<Event>> split_at_bounces(const Orbit& o, int start_leaf) {
  const auto& ev = o.events;
  const int n = static_cast<int>(ev.size());
  int start = -1;
  for (int i = 0; i < n; ++i) {
    if (ev[i].bounce && ev[i].leaf == start_leaf) {
      start = i;
      break;
    }
  }
  std::vector<std::vector<Event>> segments;
  if (start < 0) return segments;
  std::vector<Event> seg;
  for (int k = 1; k <= n; ++k) {
    const Event& e = ev[(start + k) % n];
    if (e.bounce) {
      segments.push_back(std::move(seg));
      seg.clear();
    } else {
      seg.push_back(e);
    }
  }
  return segments;
}

}  // namespace

ValidityReport validate(const TilingGraph& g) {
  ValidityReport rep;
  Layout lay = build_layout(g);
  const int d = g.num_vertices();
  const int n_leaves = g.num_leaves();

  rep.degree_ok = g.m >= 3;
  for (const auto& rot : g.rotation) {
    if (static_cast<int>(rot.size()) != vertex_degree(g.m)) rep.degree_ok = false;
  }
  if (!rep.degree_ok) {
    rep.detail = "vertex degree differs from 2m-2";
    return rep;
  }

  rep.labels_ok = true;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    int k = g.mate[h];
    if (g.label[h] < 1 || g.label[h] > g.m - 1 || g.label[h] != g.label[k] ||
        g.is_head[h] == g.is_head[k]) {
      rep.labels_ok = false;
    }
    if (lay.owner_v[h] >= 0) {
      int p = lay.owner_slot[h];
      if (g.label[h] != slot_label(g.m, p) ||
          static_cast<bool>(g.is_head[h]) != slot_is_in(g.m, p)) {
        rep.labels_ok = false;
      }
    }
  }
  if (!rep.labels_ok) rep.detail += "orientation/label pattern violated; ";

  // Connectivity of the internal vertices through vertex-to-vertex edges.
  rep.connected_ok = d >= 1;
  if (d >= 1) {
    std::vector<int> comp(d);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (int h = 0; h < g.num_half_edges(); ++h) {
      int k = g.mate[h];
      if (lay.owner_v[h] >= 0 && lay.owner_v[k] >= 0) {
        comp[find(lay.owner_v[h])] = find(lay.owner_v[k]);
      }
    }
    for (int v = 0; v < d; ++v) {
      if (find(v) != find(0)) rep.connected_ok = false;
    }
  }
  if (!rep.connected_ok) rep.detail += "not connected; ";

  // Directed cycles through two or more distinct vertices are forbidden;
  // loop edges are the only allowed cycles.
  {
    std::vector<std::vector<int>> adj(d);
    for (int h = 0; h < g.num_half_edges(); ++h) {
      int k = g.mate[h];
      if (lay.owner_v[h] >= 0 && lay.owner_v[k] >= 0 && !g.is_head[h] &&
          lay.owner_v[h] != lay.owner_v[k]) {
        adj[lay.owner_v[h]].push_back(lay.owner_v[k]);  // tail -> head
      }
    }
    std::vector<int> state(d, 0);
    bool cyc = false;
    auto dfs = [&](auto&& self, int v) -> void {
      state[v] = 1;
      for (int w : adj[v]) {
        if (state[w] == 1) cyc = true;
        if (state[w] == 0) self(self, w);
      }
      state[v] = 2;
    };
    for (int v = 0; v < d; ++v) {
      if (state[v] == 0) dfs(dfs, v);
    }
    rep.acyclic_ok = !cyc;
  }
  if (!rep.acyclic_ok) rep.detail += "directed cycle of length >= 2; ";

  auto orbits = trace_orbits(g, lay);
  const Orbit* outer = nullptr;
  int bounce_orbits = 0;
  int bounces_total = 0;
  for (const auto& o : orbits) {
    if (o.bounces > 0) {
      ++bounce_orbits;
      bounces_total += o.bounces;
      outer = &o;
    }
  }
  int euler = (d + n_leaves) - g.num_edges() + static_cast<int>(orbits.size());
  rep.planar_ok = (euler == 2) && bounce_orbits == 1 &&
                  bounces_total == n_leaves && n_leaves >= 1;
  if (!rep.planar_ok) rep.detail += "not a disk embedding; ";

  rep.boundary_ok = rep.planar_ok && g.root >= 0 && g.root < n_leaves;
  if (rep.boundary_ok) {
    // The traversal must visit the stored leaves consecutively.
    int prev = -1;
    for (const Event& e : outer->events) {
      if (!e.bounce) continue;
      if (prev >= 0 && e.leaf != (prev + 1) % n_leaves) rep.boundary_ok = false;
      prev = e.leaf;
    }
  }
  if (!rep.boundary_ok) rep.detail += "stored boundary order differs; ";

  rep.faces_ok = true;
  for (const auto& o : orbits) {
    if (o.bounces > 0) continue;
    int type;
    if (!internal_face_type(g, o, type)) rep.faces_ok = false;
  }
  if (!rep.faces_ok) rep.detail += "inadmissible internal face; ";
  return rep;
}

std::vector<Face> faces(const TilingGraph& g) {
  Layout lay = build_layout(g);
  auto orbits = trace_orbits(g, lay);
  std::vector<Face> out;
  int n = g.num_leaves();
  for (const auto& o : orbits) {
    if (o.bounces == 0) {
      Face f;
      f.kind = FaceKind::Internal;
      for (const Event& e : o.events) {
        f.corners.push_back({e.vertex, e.pos, corner_gen(g.m, e.pos)});
      }
      out.push_back(std::move(f));
      continue;
    }
    int root_leaf = g.boundary.empty() ? -1 : g.root;
    auto segments = split_at_bounces(o, o.events.front().bounce
                                            ? o.events.front().leaf
                                            : root_leaf >= 0 ? g.root : 0);
    // Prefer root-relative interval numbering when the root bounce is in
    // this orbit.
    auto rooted = split_at_bounces(o, g.root);
    if (!rooted.empty()) segments = std::move(rooted);
    for (size_t j = 0; j < segments.size(); ++j) {
      Face f;
      f.kind = FaceKind::Boundary;
      f.intervals = {static_cast<int>(j)};
      for (const Event& e : segments[j]) {
        f.corners.push_back({e.vertex, e.pos, corner_gen(g.m, e.pos)});
      }
      out.push_back(std::move(f));
    }
  }
  Face exterior;
  exterior.kind = FaceKind::Exterior;
  exterior.intervals.resize(n);
  std::iota(exterior.intervals.begin(), exterior.intervals.end(), 0);
  out.push_back(std::move(exterior));
  return out;
}

Reading algebra_sequence(const AlgebraContext& ctx, const TilingGraph& g) {
  Layout lay = build_layout(g);
  auto orbits = trace_orbits(g, lay);
  const Orbit* outer = nullptr;
  for (const auto& o : orbits) {
    if (o.bounces > 0) outer = &o;
  }
  if (!outer) throw std::logic_error("algebra_sequence: no boundary leaves");
  Reading r;
  r.iota = g.label[g.root_half_edge()];
  for (const auto& seg : split_at_bounces(*outer, g.root)) {
    std::vector<Gen> word;
    word.reserve(seg.size());
    for (const Event& e : seg) word.push_back(corner_gen(g.m, e.pos));
    if (word.empty()) {
      throw std::logic_error("algebra_sequence: empty boundary region");
    }
    int source = ctx.src[word.front()];
    if (!word_is_basis(ctx, source, word)) {
      throw std::logic_error(
          "algebra_sequence: region product vanishes (traversal convention bug)");
    }
    r.inputs.push_back(BasisPath{source, std::move(word)});
  }
  if (r.inputs.empty() || r.inputs.front().source != r.iota) {
    throw std::logic_error("algebra_sequence: root label disagrees with a_1");
  }
  return r;
}

std::vector<int> weight_vector(const TilingGraph& g) {
  Layout lay = build_layout(g);
  auto orbits = trace_orbits(g, lay);
  std::vector<int> w(g.m, 0);
  for (const auto& o : orbits) {
    if (o.bounces > 0) continue;
    int type;
    if (!internal_face_type(g, o, type)) {
      throw std::logic_error("weight_vector: inadmissible internal face");
    }
    w[type - 1] += 1;
  }
  return w;
}

CanonicalKey canonical_form(const TilingGraph& g) {
  Layout lay = build_layout(g);
  const int deg = vertex_degree(g.m);
  int root_half = g.root_half_edge();
  int v0 = lay.owner_v[g.mate[root_half]];
  std::vector<int> canon(g.num_vertices(), -1);
  std::vector<int> order;
  canon[v0] = 0;
  order.push_back(v0);
  std::ostringstream key;
  key << g.m << ':' << g.num_vertices() << ':' << g.num_leaves() << ':'
      << lay.owner_slot[g.mate[root_half]];
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int v = order[qi];
    for (int p = 0; p < deg; ++p) {
      int k = g.mate[g.rotation[v][p]];
      if (lay.owner_v[k] < 0) {
        key << ":~";
        continue;
      }
      int w = lay.owner_v[k];
      if (canon[w] < 0) {
        canon[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
      key << ':' << canon[w] << '.' << lay.owner_slot[k];
    }
  }
  return key.str();
}

TilingGraph rerooted(const TilingGraph& g, int new_root) {
  TilingGraph out = g;
  out.root = new_root;
  return out;
}

ExtendedReading read_extended(const AlgebraContext& ctx, const ExtendedGraph& e) {
  Reading base = algebra_sequence(ctx, e.base);
  ExtendedReading out;
  out.iota = base.iota;
  out.inputs = base.inputs;
  if (e.labels.empty()) {
    out.output_factor = idempotent(base.iota);
    return out;
  }
  if (!word_is_basis(ctx, ctx.src[e.labels.front()], e.labels)) {
    throw std::invalid_argument("read_extended: extension word vanishes");
  }
  BasisPath factor{ctx.src[e.labels.front()], e.labels};
  if (e.side == ExtendedGraph::Side::Right) {
    if (factor.source != base.iota) {
      throw std::invalid_argument("read_extended: factor does not compose with the root idempotent");
    }
    auto merged = concat(ctx, out.inputs.back(), factor);
    if (!merged) {
      throw std::invalid_argument("read_extended: extension does not extend the last input");
    }
    out.inputs.back() = *merged;
  } else {
    if (path_target(ctx, factor) != base.iota) {
      throw std::invalid_argument("read_extended: factor does not compose with the root idempotent");
    }
    auto merged = concat(ctx, factor, out.inputs.front());
    if (!merged) {
      throw std::invalid_argument("read_extended: extension does not extend the first input");
    }
    out.inputs.front() = *merged;
  }
  out.output_factor = factor;
  return out;
}

bool build_centered(int m, int d,
                    const std::vector<std::pair<SlotRef, SlotRef>>& out_in_edges,
                    TilingGraph& out) {
  const int deg = vertex_degree(m);
  out = TilingGraph{};
  out.m = m;
  out.rotation.assign(d, std::vector<int>(deg, -1));
  auto half_id = [&](const SlotRef& s) { return s.v * deg + s.slot; };
  int h_internal = d * deg;
  out.mate.assign(h_internal, -1);
  out.label.assign(h_internal, 0);
  out.is_head.assign(h_internal, 0);
  for (int v = 0; v < d; ++v) {
    for (int p = 0; p < deg; ++p) {
      int h = v * deg + p;
      out.rotation[v][p] = h;
      out.label[h] = slot_label(m, p);
      out.is_head[h] = slot_is_in(m, p) ? 1 : 0;
    }
  }
  for (const auto& [from, to] : out_in_edges) {
    int a = half_id(from), b = half_id(to);
    if (out.mate[a] != -1 || out.mate[b] != -1) return false;
    out.mate[a] = b;
    out.mate[b] = a;
  }
  // Unmatched slots become leaves; leaf half-edges are appended after the
  // internal ones, in slot order, then reordered by the face traversal.
  std::vector<int> provisional_leaves;
  for (int h = 0; h < h_internal; ++h) {
    if (out.mate[h] != -1) continue;
    int leaf_half = static_cast<int>(out.mate.size());
    out.mate.push_back(h);
    out.label.push_back(out.label[h]);
    out.is_head.push_back(out.is_head[h] ? 0 : 1);
    out.mate[h] = leaf_half;
    provisional_leaves.push_back(leaf_half);
  }
  out.boundary = provisional_leaves;
  out.root = 0;
  if (provisional_leaves.empty()) return false;

  // Derive the true cyclic order from the face traversal: the leaves must
  // lie on a single face.
  Layout lay = build_layout(out);
  auto orbits = trace_orbits(out, lay);
  const Orbit* outer = nullptr;
  int bounce_orbits = 0;
  for (const auto& o : orbits) {
    if (o.bounces > 0) {
      ++bounce_orbits;
      outer = &o;
    }
  }
  if (bounce_orbits != 1 ||
      outer->bounces != static_cast<int>(provisional_leaves.size())) {
    return false;
  }
  std::vector<int> ordered;
  ordered.reserve(provisional_leaves.size());
  for (const Event& e : outer->events) {
    if (e.bounce) ordered.push_back(provisional_leaves[e.leaf]);
  }
  out.boundary = std::move(ordered);
  return true;
}

std::string to_json_string(const TilingGraph& g) {
  nlohmann::ordered_json j;
  j["m"] = g.m;
  j["vertices"] = g.rotation;
  auto edges = nlohmann::ordered_json::array();
  for (int h = 0; h < g.num_half_edges(); ++h) {
    int k = g.mate[h];
    if (h < k) {
      nlohmann::ordered_json e;
      e["halves"] = {h, k};
      e["label"] = g.label[h];
      e["head"] = g.is_head[h] ? h : k;
      edges.push_back(std::move(e));
    }
  }
  j["edges"] = std::move(edges);
  j["boundary"] = g.boundary;
  j["root"] = g.root;
  return j.dump();
}

TilingGraph graph_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("graph JSON parse error: ") + e.what());
  }
  TilingGraph g;
  try {
    g.m = j.at("m").get<int>();
    g.rotation = j.at("vertices").get<std::vector<std::vector<int>>>();
    g.boundary = j.at("boundary").get<std::vector<int>>();
    g.root = j.at("root").get<int>();
    int h_count = 0;
    for (const auto& e : j.at("edges")) {
      for (int h : e.at("halves").get<std::vector<int>>()) {
        h_count = std::max(h_count, h + 1);
      }
    }
    g.mate.assign(h_count, -1);
    g.label.assign(h_count, 0);
    g.is_head.assign(h_count, 0);
    for (const auto& e : j.at("edges")) {
      auto halves = e.at("halves").get<std::vector<int>>();
      int lab = e.at("label").get<int>();
      int head = e.at("head").get<int>();
      if (halves.size() != 2) throw std::runtime_error("bad edge record");
      g.mate[halves[0]] = halves[1];
      g.mate[halves[1]] = halves[0];
      g.label[halves[0]] = g.label[halves[1]] = lab;
      g.is_head[head] = 1;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("graph JSON missing fields: ") + e.what());
  }
  return g;
}

std::string to_dot(const TilingGraph& g) {
  Layout lay = build_layout(g);
  std::ostringstream out;
  out << "digraph tiling {\n";
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << "  v" << v << " [shape=circle];\n";
  }
  for (int j = 0; j < g.num_leaves(); ++j) {
    out << "  b" << j << " [shape=point";
    if (j == g.root) out << ", color=red, xlabel=\"root\"";
    out << "];\n";
  }
  auto name = [&](int h) {
    std::ostringstream s;
    if (lay.owner_v[h] >= 0) {
      s << 'v' << lay.owner_v[h];
    } else {
      s << 'b' << lay.owner_slot[h];
    }
    return s.str();
  };
  for (int h = 0; h < g.num_half_edges(); ++h) {
    int k = g.mate[h];
    if (h > k) continue;
    int tail = g.is_head[h] ? k : h;
    int head = g.mate[tail];
    out << "  " << name(tail) << " -> " << name(head) << " [label=\""
        << g.label[h] << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace cm1
