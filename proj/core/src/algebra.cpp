#include "cm1/algebra.hpp"

#include <algorithm>

namespace cm1 {

AlgebraContext make_algebra(int m) {
  if (m < 3) {
    throw std::invalid_argument("make_algebra: m must be >= 3 (m = " +
                                std::to_string(m) + " unsupported)");
  }
  AlgebraContext ctx;
  ctx.m = m;
  ctx.num_gens = 2 * m - 2;
  ctx.src.assign(ctx.num_gens, 0);
  ctx.dst.assign(ctx.num_gens, 0);
  ctx.gen_name.assign(ctx.num_gens, "");

  ctx.src[kGenU1] = ctx.dst[kGenU1] = 1;
  ctx.gen_name[kGenU1] = "U1";
  ctx.src[kGenUm] = ctx.dst[kGenUm] = m - 1;
  ctx.gen_name[kGenUm] = "U" + std::to_string(m);
  for (int i = 2; i <= m - 1; ++i) {
    ctx.src[gen_l(i)] = i;
    ctx.dst[gen_l(i)] = i - 1;
    ctx.gen_name[gen_l(i)] = "L" + std::to_string(i);
    ctx.src[gen_r(i)] = i - 1;
    ctx.dst[gen_r(i)] = i;
    ctx.gen_name[gen_r(i)] = "R" + std::to_string(i);
  }

  for (int i = 3; i <= m - 1; ++i) {
    ctx.forbidden.emplace_back(gen_l(i), gen_l(i - 1));
    ctx.forbidden.emplace_back(gen_r(i - 1), gen_r(i));
  }
  ctx.forbidden.emplace_back(gen_l(2), kGenU1);
  ctx.forbidden.emplace_back(kGenU1, gen_r(2));
  ctx.forbidden.emplace_back(gen_r(m - 1), kGenUm);
  ctx.forbidden.emplace_back(kGenUm, gen_l(m - 1));

  ctx.composable.assign(ctx.num_gens, std::vector<bool>(ctx.num_gens, false));
  for (Gen g = 0; g < ctx.num_gens; ++g) {
    for (Gen h = 0; h < ctx.num_gens; ++h) {
      ctx.composable[g][h] = (ctx.dst[g] == ctx.src[h]);
    }
  }
  for (auto [g, h] : ctx.forbidden) ctx.composable[g][h] = false;
  return ctx;
}

BasisPath idempotent(int vertex) { return BasisPath{vertex, {}}; }

BasisPath path_of_gen(const AlgebraContext& ctx, Gen g) {
  return BasisPath{ctx.src[g], {g}};
}

BasisPath path_of_word(const AlgebraContext& ctx, const std::vector<Gen>& word) {
  if (word.empty()) throw std::invalid_argument("path_of_word: empty word");
  BasisPath p{ctx.src[word.front()], word};
  if (!word_is_basis(ctx, p.source, p.word)) {
    throw std::invalid_argument("path_of_word: word is zero in the quotient");
  }
  return p;
}

int path_target(const AlgebraContext& ctx, const BasisPath& p) {
  return p.word.empty() ? p.source : ctx.dst[p.word.back()];
}

bool word_is_basis(const AlgebraContext& ctx, int source,
                   const std::vector<Gen>& word) {
  if (word.empty()) return ctx.is_vertex(source);
  if (ctx.src[word.front()] != source) return false;
  for (size_t i = 0; i + 1 < word.size(); ++i) {
    if (!ctx.composable[word[i]][word[i + 1]]) return false;
  }
  return true;
}

std::optional<BasisPath> concat(const AlgebraContext& ctx, const BasisPath& a,
                                const BasisPath& b) {
  if (path_target(ctx, a) != b.source) return std::nullopt;
  if (a.is_idempotent()) return b;
  if (b.is_idempotent()) return a;
  if (!ctx.composable[a.word.back()][b.word.front()]) return std::nullopt;
  BasisPath r = a;
  r.word.insert(r.word.end(), b.word.begin(), b.word.end());
  return r;
}

std::vector<std::pair<BasisPath, BasisPath>> factorizations(
    const AlgebraContext& ctx, const BasisPath& p) {
  if (p.is_idempotent()) {
    throw std::invalid_argument("factorizations: path must be pure");
  }
  std::vector<std::pair<BasisPath, BasisPath>> out;
  for (int cut = 1; cut < p.length(); ++cut) {
    BasisPath a{p.source, {p.word.begin(), p.word.begin() + cut}};
    BasisPath b{ctx.src[p.word[cut]], {p.word.begin() + cut, p.word.end()}};
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

namespace {
void add_gen_shadow(const AlgebraContext& ctx, Gen g, std::vector<int>& v) {
  if (g == kGenU1) {
    v[0] += 2;
  } else if (g == kGenUm) {
    v[ctx.m - 1] += 2;
  } else {
    int i = 2 + (g - 2) / 2;  // label of L_i / R_i
    v[i - 1] += 1;
  }
}
}  // namespace

std::vector<int> dbl_shadow(const AlgebraContext& ctx, const BasisPath& p) {
  std::vector<int> v(ctx.m, 0);
  for (Gen g : p.word) add_gen_shadow(ctx, g, v);
  return v;
}

int dbl_shadow_total(const AlgebraContext& /*ctx*/, const BasisPath& p) {
  int t = 0;
  for (Gen g : p.word) t += (g == kGenU1 || g == kGenUm) ? 2 : 1;
  return t;
}

std::vector<BasisPath> basis_paths_up_to(const AlgebraContext& ctx, int bound) {
  std::vector<BasisPath> out;
  std::vector<Gen> word;
  // Depth-first extension by composable, non-vanishing generators.
  auto grow = [&](auto&& self, int total) -> void {
    for (Gen g = 0; g < ctx.num_gens; ++g) {
      if (!word.empty() && !ctx.composable[word.back()][g]) continue;
      int w = (g == kGenU1 || g == kGenUm) ? 2 : 1;
      if (total + w > bound) continue;
      word.push_back(g);
      out.push_back(BasisPath{ctx.src[word.front()], word});
      self(self, total + w);
      word.pop_back();
    }
  };
  grow(grow, 0);
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraElement AlgebraElement::from_path(int m, const BasisPath& p, int t,
                                         Coeff c) {
  AlgebraElement e(m);
  e.add_term(Monomial{p, t}, c);
  return e;
}

void AlgebraElement::add_term(const Monomial& mono, Coeff c) {
  if (c == 0) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r += o;
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r -= o;
  return r;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(-1); }

AlgebraElement AlgebraElement::scaled(Coeff c) const {
  AlgebraElement r(m_);
  if (c == 0) return r;
  for (const auto& [mono, k] : terms_) r.terms_.emplace(mono, k * c);
  return r;
}

AlgebraElement AlgebraElement::times_t(int k) const {
  AlgebraElement r(m_);
  for (const auto& [mono, c] : terms_) {
    r.terms_.emplace(Monomial{mono.path, mono.t + k}, c);
  }
  return r;
}

AlgebraElement multiply_paths(const AlgebraContext& ctx, const BasisPath& a,
                              const BasisPath& b) {
  auto p = concat(ctx, a, b);
  AlgebraElement r(ctx.m);
  if (p) r.add_term(Monomial{*p, 0}, 1);
  return r;
}

AlgebraElement multiply(const AlgebraContext& ctx, const AlgebraElement& a,
                        const AlgebraElement& b) {
  if (a.m() != ctx.m || b.m() != ctx.m) {
    throw std::invalid_argument("multiply: mismatched algebra contexts");
  }
  AlgebraElement r(ctx.m);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto p = concat(ctx, ma.path, mb.path);
      if (p) r.add_term(Monomial{*p, ma.t + mb.t}, ca * cb);
    }
  }
  return r;
}

AlgebraElement path_times(const AlgebraContext& ctx, const BasisPath& x,
                          const AlgebraElement& e) {
  AlgebraElement r(ctx.m);
  for (const auto& [mono, c] : e.terms()) {
    auto p = concat(ctx, x, mono.path);
    if (p) r.add_term(Monomial{*p, mono.t}, c);
  }
  return r;
}

AlgebraElement times_path(const AlgebraContext& ctx, const AlgebraElement& e,
                          const BasisPath& x) {
  AlgebraElement r(ctx.m);
  for (const auto& [mono, c] : e.terms()) {
    auto p = concat(ctx, mono.path, x);
    if (p) r.add_term(Monomial{*p, mono.t}, c);
  }
  return r;
}

AlgebraElement u_element(const AlgebraContext& ctx, int i) {
  if (i < 1 || i > ctx.m) {
    throw std::out_of_range("u_element: index out of range");
  }
  if (i == 1) return AlgebraElement::from_path(ctx.m, path_of_gen(ctx, kGenU1));
  if (i == ctx.m) {
    return AlgebraElement::from_path(ctx.m, path_of_gen(ctx, kGenUm));
  }
  AlgebraElement e(ctx.m);
  e.add_term(Monomial{path_of_word(ctx, {gen_r(i), gen_l(i)}), 0}, 1);
  e.add_term(Monomial{path_of_word(ctx, {gen_l(i), gen_r(i)}), 0}, 1);
  return e;
}

AlgebraElement unit_element(const AlgebraContext& ctx) {
  AlgebraElement e(ctx.m);
  for (int x = 1; x <= ctx.m - 1; ++x) e.add_term(Monomial{idempotent(x), 0}, 1);
  return e;
}

std::vector<int> dbl_shadow(const AlgebraContext& ctx, const Monomial& mono) {
  auto v = dbl_shadow(ctx, mono.path);
  for (int& c : v) c += 2 * mono.t;
  return v;
}

int gr_degree(const AlgebraContext& ctx, const Monomial& mono) {
  return mono.t * (2 * ctx.m - 4);
}

GradingInfo gradings(const AlgebraContext& ctx, const AlgebraElement& x) {
  GradingInfo info;
  if (x.is_zero()) {
    info.is_zero = true;
    return info;
  }
  bool first = true;
  std::vector<int> shadow;
  int gr = 0;
  bool shadow_ok = true, gr_ok = true;
  for (const auto& [mono, c] : x.terms()) {
    auto s = dbl_shadow(ctx, mono);
    int g = gr_degree(ctx, mono);
    if (first) {
      shadow = std::move(s);
      gr = g;
      first = false;
    } else {
      if (s != shadow) shadow_ok = false;
      if (g != gr) gr_ok = false;
    }
  }
  if (shadow_ok) info.dbl_shadow = shadow;
  if (gr_ok) info.gr = gr;
  return info;
}

}  // namespace cm1
