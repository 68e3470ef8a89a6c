// Brute-force reference implementations. Deliberately independent of the
// optimized modules: only the datum and element value types are shared, and
// every quantity is re-derived from its definition.
#pragma once

#include "iwk/iwahori_weyl.hpp"

#include <deque>

namespace iwk::oracle {

struct Caps {
  int max_length = 6;        // BFS word search depth
  int downset_length = 8;    // reduced-word length for subword down-sets
  int max_coord = 3;         // coefficient bound for cone membership
  std::size_t closure_factor = 10;
  std::size_t max_states = 2000000;
};

inline const Caps& caps() {
  static const Caps c;
  return c;
}

struct Mismatch {
  std::string input, main_result, oracle_result;
};

struct Report {
  std::size_t checked = 0;
  std::vector<Mismatch> mismatches;
  void check(bool ok, std::string input, std::string main_result, std::string oracle_result) {
    ++checked;
    if (!ok) mismatches.push_back({std::move(input), std::move(main_result), std::move(oracle_result)});
  }
  bool passed() const { return mismatches.empty(); }
};

// --- semidirect product, restated ---------------------------------------------

inline IwElement times(const IwElement& x, const IwElement& y) {
  const RootDatum& d = x.datum();
  const std::vector<Int> moved = d.weyl(x.fin()).mat.apply(y.trans().coords);
  std::vector<Int> t(x.trans().coords);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += moved[i];
  int w = x.fin();
  for (int j : d.weyl(y.fin()).word) w = d.weyl(w).rmul[j];
  return IwElement(x.datum_ptr(), d.reduce(t), w);
}

inline IwElement gen(const DatumPtr& d, int s) {
  const AffineGen& g = d->generators().at(static_cast<std::size_t>(s));
  return IwElement(d, g.trans, g.fin);
}

/// A point strictly inside the base alcove: ⟨α_i, p⟩ = 1/(2H) for every simple root.
inline RatCoWeight alcove_point(const RootDatum& d) {
  const std::size_t r = d.rank(), f = d.free_rank();
  int H = 1;
  for (const Root& a : d.roots()) H = std::max(H, a.height + 1);
  std::vector<std::vector<Rat>> A(r, std::vector<Rat>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A[i][j] = Rat(d.cartan()(i, j));
  std::vector<Rat> rhs(r, Rat(1, 2 * H)), c;
  if (!solve_rational(A, rhs, c)) throw Error("INTERNAL", "singular Cartan matrix");
  RatCoWeight p{std::vector<Rat>(f)};
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < f; ++k) p.coords[k] += c[j] * Rat(d.simple_coroots()[j].coords[k]);
  return p;
}

inline RatCoWeight act_point(const IwElement& x, const RatCoWeight& p) {
  const RootDatum& d = x.datum();
  const std::size_t f = d.free_rank();
  RatCoWeight out{std::vector<Rat>(f)};
  for (std::size_t i = 0; i < f; ++i) {
    out.coords[i] = Rat(x.trans().coords[i]);
    for (std::size_t j = 0; j < f; ++j) out.coords[i] += Rat(d.weyl(x.fin()).mat(i, j)) * p.coords[j];
  }
  return out;
}

/// q lies in the open base alcove: 0 < ⟨α_i, q⟩ and ⟨θ_c, q⟩ < 1 for every component.
inline bool in_base_alcove(const RootDatum& d, const RatCoWeight& q) {
  for (std::size_t i = 0; i < d.rank(); ++i) {
    Rat v = 0;
    for (std::size_t k = 0; k < d.free_rank(); ++k) v += Rat(d.root_pairing()[i][k]) * q.coords[k];
    if (v <= 0) return false;
  }
  for (std::size_t c = 0; c < d.components().size(); ++c) {
    const Root& th = d.roots()[d.highest_root(static_cast<int>(c))];
    Rat v = 0;
    for (std::size_t k = 0; k < d.free_rank(); ++k) v += Rat(th.covector[k]) * q.coords[k];
    if (v >= 1) return false;
  }
  return true;
}

struct WordSearch {
  int length = 0;
  std::vector<int> word;  // x = s_{word[0]}···s_{word[k−1]}·ω
  IwElement omega;
};

/// Shortest word: BFS from x by left multiplication with S until the base
/// alcove is mapped to itself.
inline WordSearch bfs_word(const IwElement& x, int cap = caps().max_length) {
  const DatumPtr& d = x.datum_ptr();
  const RatCoWeight p = alcove_point(*d);
  const int nS = static_cast<int>(d->generators().size());
  std::map<IwElement, std::pair<IwElement, int>> parent;
  std::deque<std::pair<IwElement, int>> queue{{x, 0}};
  parent.emplace(x, std::make_pair(x, -1));
  while (!queue.empty()) {
    auto [y, depth] = queue.front();
    queue.pop_front();
    if (in_base_alcove(*d, act_point(y, p))) {
      WordSearch ws;
      ws.length = depth;
      ws.omega = y;
      // y = s_{k}···s_{1}·x, so x = s_1···s_k·y
      std::vector<int> rev;
      IwElement cur = y;
      while (parent.at(cur).second >= 0) {
        rev.push_back(parent.at(cur).second);
        cur = parent.at(cur).first;
      }
      ws.word.assign(rev.rbegin(), rev.rend());
      return ws;
    }
    if (depth >= cap) continue;
    for (int s = 0; s < nS; ++s) {
      IwElement z = times(gen(d, s), y);
      if (parent.count(z)) continue;
      parent.emplace(z, std::make_pair(y, s));
      if (parent.size() > caps().max_states) throw Error("CAP_EXCEEDED", "BFS state cap reached");
      queue.emplace_back(std::move(z), depth + 1);
    }
  }
  throw Error("CAP_EXCEEDED", "no word of length <= " + std::to_string(cap));
}

inline int bfs_length(const IwElement& x, int cap = caps().max_length) { return bfs_word(x, cap).length; }

/// All products of subwords of a shortest word of y, times its Ω-part.
inline std::set<IwElement> subword_products(const IwElement& y, int cap = caps().downset_length) {
  const WordSearch ws = bfs_word(y, cap);
  const DatumPtr& d = y.datum_ptr();
  std::set<IwElement> out;
  const std::size_t k = ws.word.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    IwElement z = ws.omega;
    for (std::size_t i = k; i-- > 0;)
      if (mask & (std::size_t{1} << i)) z = times(gen(d, ws.word[i]), z);
    out.insert(z);
  }
  return out;
}

inline bool subword_leq(const IwElement& x, const IwElement& y) { return subword_products(y).count(x) > 0; }

/// Union of subword down-sets of the given maximal elements.
inline std::set<IwElement> down_set(const std::vector<IwElement>& maxima) {
  std::set<IwElement> out;
  for (const IwElement& m : maxima) {
    auto s = subword_products(m);
    out.insert(s.begin(), s.end());
  }
  return out;
}

/// v is a combination Σ n_i g_i with integers 0 ≤ n_i ≤ bound.
inline bool cone_member(const RootDatum& d, const CoWeight& v, const std::vector<CoWeight>& gens,
                        int bound = caps().max_coord) {
  std::vector<int> n(gens.size(), 0);
  for (;;) {
    std::vector<Int> acc(d.dim(), Int(0));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t k = 0; k < d.dim(); ++k) acc[k] += gens[i].coords[k] * n[i];
    if (d.reduce(acc) == v) return true;
    std::size_t i = 0;
    while (i < n.size() && n[i] == bound) n[i++] = 0;
    if (i == n.size()) return false;
    ++n[i];
  }
}

/// σ-conjugation orbit x ↦ s·x·σ(s)⁻¹ (s ∈ S ∪ extra) restricted to BFS length ≤ bound
/// and to the π₁ class of the seed.
inline std::set<IwElement> orbit_closure(const IwElement& seed, int bound,
                                         const std::vector<IwElement>& extra = {}) {
  const DatumPtr& d = seed.datum_ptr();
  std::vector<std::pair<IwElement, IwElement>> conj;  // (g, σ(g)⁻¹)
  auto add = [&](const IwElement& g) {
    IwElement sg(d, d->sigma(g.trans()), d->weyl(g.fin()).sigma);
    const int wi = d->weyl(sg.fin()).inverse;
    const std::vector<Int> t = d->weyl(wi).mat.apply(sg.trans().coords);
    std::vector<Int> nt(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) nt[i] = -t[i];
    conj.emplace_back(g, IwElement(d, d->reduce(nt), wi));
  };
  for (std::size_t s = 0; s < d->generators().size(); ++s) add(gen(d, static_cast<int>(s)));
  for (const auto& g : extra) add(g);
  const std::vector<Int> cls = d->pi1_class(seed.trans());
  std::set<IwElement> seen{seed};
  std::vector<IwElement> queue{seed};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& [g, gi] : conj) {
      IwElement z = times(times(g, queue[q]), gi);
      if (seen.count(z) || d->pi1_class(z.trans()) != cls) continue;
      bool within = true;
      try {
        within = bfs_length(z, bound) <= bound;
      } catch (const Error&) {
        within = false;
      }
      if (!within) continue;
      seen.insert(z);
      queue.push_back(z);
      if (seen.size() > caps().max_states) throw Error("CAP_EXCEEDED", "orbit cap reached");
    }
  return seen;
}

/// Explicit closure of the subgroup generated by K, giving up at 10·|W₀| elements.
inline bool subgroup_finite_by_closure(const DatumPtr& d, const std::vector<int>& K) {
  const std::size_t cap = caps().closure_factor * d->weyl_order();
  const IwElement e(d, d->zero(), 0);
  std::set<IwElement> seen{e};
  std::vector<IwElement> queue{e};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int s : K) {
      IwElement z = times(gen(d, s), queue[q]);
      if (seen.insert(z).second) {
        queue.push_back(z);
        if (seen.size() > cap) return false;
      }
    }
  return true;
}

/// Dominant λ with μ − λ = Σ c_i α_i^∨ for integers 0 ≤ c_i ≤ (coefficients of μ − w₀μ).
inline std::set<CoWeight> dominant_interval(const DatumPtr& d, const CoWeight& mu) {
  int w0 = 0;
  for (std::size_t w = 0; w < d->weyl_order(); ++w)
    if (d->weyl(static_cast<int>(w)).word.size() > d->weyl(w0).word.size()) w0 = static_cast<int>(w);
  const CoWeight low = d->reduce(d->weyl(w0).mat.apply(mu.coords));
  std::vector<Rat> diff;
  for (std::size_t i = 0; i < d->free_rank(); ++i) diff.emplace_back(mu.coords[i] - low.coords[i]);
  std::vector<std::vector<Rat>> A(d->free_rank(), std::vector<Rat>(d->rank()));
  for (std::size_t i = 0; i < d->free_rank(); ++i)
    for (std::size_t j = 0; j < d->rank(); ++j) A[i][j] = Rat(d->simple_coroots()[j].coords[i]);
  std::vector<Rat> top;
  if (!solve_rational(A, diff, top)) throw Error("INTERNAL", "μ − w₀μ outside the coroot span");
  std::vector<int> bound;
  for (const Rat& t : top) bound.push_back(static_cast<int>(rat_numerator(t).convert_to<long long>()));
  std::set<CoWeight> out;
  std::vector<int> c(bound.size(), 0);
  for (;;) {
    std::vector<Int> v = mu.coords;
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t k = 0; k < d->dim(); ++k) v[k] -= d->simple_coroots()[j].coords[k] * c[j];
    const CoWeight l = d->reduce(v);
    bool dom = true;
    for (std::size_t i = 0; i < d->rank(); ++i) {
      Int acc = 0;
      for (std::size_t k = 0; k < d->free_rank(); ++k) acc += d->root_pairing()[i][k] * l.coords[k];
      dom = dom && acc >= 0;
    }
    if (dom) out.insert(l);
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound[i]) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

/// Checks U·m·V = D, diagonal shape with successive divisibility, and
/// unimodularity of U and V.
inline bool verify_smith(const IntMatrix& m, const IntMatrix& U, const IntMatrix& D, const IntMatrix& V) {
  if (U * m * V != D) return false;
  Int prev = 1;
  bool seen_zero = false;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (i != j && !D(i, j).is_zero()) return false;
      if (i != j) continue;
      const Int& v = D(i, j);
      if (v < 0) return false;
      if (v.is_zero()) {
        seen_zero = true;
        continue;
      }
      if (seen_zero || !(v % prev).is_zero()) return false;
      prev = v;
    }
  auto unimodular = [](const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) return false;
    std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i][j] = Rat(a(i, j));
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && r[p][c] == 0) ++p;
      if (p == n) return false;
      if (p != c) {
        std::swap(r[p], r[c]);
        det = -det;
      }
      det *= r[c][c];
      for (std::size_t i = c + 1; i < n; ++i) {
        const Rat f = r[i][c] / r[c][c];
        for (std::size_t j = c; j < n; ++j) r[i][j] -= f * r[c][j];
      }
    }
    return det == 1 || det == -1;
  };
  return unimodular(U) && unimodular(V);
}

}  // namespace iwk::oracle
