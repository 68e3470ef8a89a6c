// Admissible sets Adm(μ), their parahoric images Adm(μ)_K, EKOR index sets
// ^K Adm(μ), τ_μ, the very special description and closure posets.
#pragma once

#include "iwk/iwahori_weyl.hpp"

#include <thread>

namespace iwk {

enum class AdmKind { iwahori, parahoric_double_coset, ekor_min_reps };

inline const char* kind_name(AdmKind k) {
  switch (k) {
    case AdmKind::iwahori: return "iwahori";
    case AdmKind::parahoric_double_coset: return "parahoric_double_coset";
    case AdmKind::ekor_min_reps: return "ekor_min_reps";
  }
  return "";
}

struct AdmissibleSet {
  CoWeight mu;
  std::vector<int> level;
  AdmKind kind = AdmKind::iwahori;
  std::vector<IwElement> elements;
};

inline void require_dominant(const RootDatum& d, const CoWeight& mu) {
  if (!is_dominant(d, mu)) throw Error("NOT_DOMINANT", to_string(mu) + " is not dominant");
}

/// True when σ moves the dominant μ̄ to a different dominant coweight.
inline bool sigma_moves_mu(const RootDatum& d, const CoWeight& mu) {
  return dominant_rep(d, d.sigma(mu)) != mu;
}

/// The W₀-orbit {x(μ)} in a fixed order.
inline std::vector<CoWeight> weyl_orbit(const RootDatum& d, const CoWeight& mu) {
  std::set<CoWeight> seen;
  std::vector<CoWeight> out;
  for (std::size_t w = 0; w < d.weyl_order(); ++w) {
    CoWeight l = d.act(static_cast<int>(w), mu);
    if (seen.insert(l).second) out.push_back(l);
  }
  return out;
}

inline IwElement tau_of(const DatumPtr& d, const CoWeight& mu) {
  require_dominant(*d, mu);
  return omega_of_class(d, mu);
}

/// Bruhat coatoms of x: delete one letter of its reduced word, keep length ℓ(x) − 1.
inline std::vector<IwElement> coatoms(const IwElement& x) {
  const DatumPtr& d = x.datum_ptr();
  const ReducedWord rw = reduced_word(x);
  const std::size_t k = rw.word.size();
  std::vector<IwElement> prefix{identity(d)};
  for (std::size_t i = 0; i < k; ++i) prefix.push_back(right_mul_gen(prefix.back(), rw.word[i]));
  std::vector<IwElement> suffix(k + 1);
  suffix[k] = rw.omega;
  for (std::size_t i = k; i-- > 0;) suffix[i] = left_mul_gen(suffix[i + 1], rw.word[i]);
  std::vector<IwElement> out;
  const std::int64_t target = static_cast<std::int64_t>(k) - 1;
  for (std::size_t i = 0; i < k; ++i) {
    IwElement c = mul(prefix[i], suffix[i + 1]);
    if (length(c) == target) out.push_back(std::move(c));
  }
  return out;
}

/// Maps f over xs using up to `threads` workers; results keep input order.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& xs, unsigned threads, F f) {
  using R = decltype(f(xs[0]));
  std::vector<R> out(xs.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(xs.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < xs.size(); i += threads) out[i] = f(xs[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Bruhat down-set of the given elements, walked level by level via coatoms.
inline std::vector<IwElement> bruhat_down_set(const std::vector<IwElement>& maxima, unsigned threads = 1) {
  std::map<std::int64_t, std::set<IwElement>> levels;
  for (const auto& m : maxima) levels[length(m)].insert(m);
  std::vector<IwElement> all;
  while (!levels.empty()) {
    auto it = std::prev(levels.end());
    const std::int64_t L = it->first;
    std::vector<IwElement> cur(it->second.begin(), it->second.end());
    levels.erase(it);
    all.insert(all.end(), cur.begin(), cur.end());
    if (L == 0) continue;
    auto below = parallel_map(cur, threads, [](const IwElement& x) { return coatoms(x); });
    auto& next = levels[L - 1];
    for (auto& v : below)
      for (auto& c : v) next.insert(std::move(c));
  }
  canonical_sort(all);
  return all;
}

inline AdmissibleSet adm(const DatumPtr& d, const CoWeight& mu, unsigned threads = 1) {
  require_dominant(*d, mu);
  std::vector<IwElement> maxima;
  for (const CoWeight& l : weyl_orbit(*d, mu)) maxima.push_back(translation(d, l));
  AdmissibleSet out;
  out.mu = mu;
  out.kind = AdmKind::iwahori;
  out.elements = bruhat_down_set(maxima, threads);
  return out;
}

inline std::vector<int> normalize_level(const RootDatum& d, std::vector<int> K) {
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  for (int s : K)
    if (s < 0 || s >= static_cast<int>(d.generators().size()))
      throw Error("BAD_LEVEL", "generator index " + std::to_string(s) + " out of range");
  return K;
}

inline void check_level(const RootDatum& d, const std::vector<int>& K) {
  for (int s : K)
    if (!std::binary_search(K.begin(), K.end(), d.sigma_generator(s)))
      throw Error("K_NOT_SIGMA_STABLE", "level {" + join(K) + "} is not σ-stable");
  if (!subgroup_finite(d, K)) throw Error("K_INFINITE", "W_K is infinite for level {" + join(K) + "}");
}

inline AdmissibleSet adm_K(const DatumPtr& d, const CoWeight& mu, std::vector<int> K, unsigned threads = 1) {
  K = normalize_level(*d, std::move(K));
  check_level(*d, K);
  const AdmissibleSet full = adm(d, mu, threads);
  auto reps = parallel_map(full.elements, threads,
                           [&](const IwElement& x) { return min_coset_rep(K, x, CosetSide::both); });
  std::set<IwElement> uniq(reps.begin(), reps.end());
  AdmissibleSet out{mu, K, AdmKind::parahoric_double_coset, {uniq.begin(), uniq.end()}};
  canonical_sort(out.elements);
  return out;
}

inline AdmissibleSet k_adm(const DatumPtr& d, const CoWeight& mu, std::vector<int> K, unsigned threads = 1) {
  K = normalize_level(*d, std::move(K));
  check_level(*d, K);
  const AdmissibleSet full = adm(d, mu, threads);
  AdmissibleSet out{mu, K, AdmKind::ekor_min_reps, {}};
  for (const auto& x : full.elements)
    if (is_left_K_minimal(K, x)) out.elements.push_back(x);
  return out;
}

/// Elements of the finite group W̃_K, or nothing if it exceeds `cap`.
inline std::optional<std::vector<IwElement>> enumerate_parahoric(const DatumPtr& d, const std::vector<int>& K,
                                                                 std::size_t cap) {
  const IwElement e = identity(d);
  std::set<IwElement> seen{e};
  std::vector<IwElement> queue{e};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int s : K) {
      IwElement z = right_mul_gen(queue[q], s);
      if (seen.insert(z).second) {
        queue.push_back(z);
        if (seen.size() > cap) return std::nullopt;
      }
    }
  return queue;
}

/// |W̃_K| = |W₀| and W̃_K → W₀ injective.
inline bool is_very_special(const DatumPtr& d, const std::vector<int>& K) {
  if (!subgroup_finite(*d, K)) return false;
  for (int s : K)
    if (std::find(K.begin(), K.end(), d->sigma_generator(s)) == K.end()) return false;
  const auto elems = enumerate_parahoric(d, K, d->weyl_order());
  if (!elems || elems->size() != d->weyl_order()) return false;
  std::set<int> fins;
  for (const auto& x : *elems) fins.insert(x.fin());
  return fins.size() == elems->size();
}

/// The finite simple reflections: a very special level for every datum here.
inline std::vector<int> default_special_level(const RootDatum& d) {
  std::vector<int> K;
  for (std::size_t i = 0; i < d.rank(); ++i) K.push_back(d.generator_of_simple(static_cast<int>(i)));
  std::sort(K.begin(), K.end());
  return K;
}

/// First very special level: the finite simple reflections if very special,
/// otherwise the lexicographically first σ-stable subset that is.
inline std::vector<int> find_very_special(const DatumPtr& d) {
  const std::vector<int> K0 = default_special_level(*d);
  if (is_very_special(d, K0)) return K0;
  const int n = static_cast<int>(d->generators().size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> K;
    for (int s = 0; s < n; ++s)
      if (mask & (1 << s)) K.push_back(s);
    if (K.size() == d->rank() && is_very_special(d, K)) return K;
  }
  throw Error("NOT_VERY_SPECIAL", "no very special level found");
}

/// Vertex v_K of the base alcove fixed by W̃_K, in simple-coroot coordinates.
inline std::vector<Rat> level_vertex(const RootDatum& d, const std::vector<int>& K) {
  const std::size_t r = d.rank();
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (int s : K) {
    const AffineGen& g = d.generators()[s];
    std::vector<Rat> row(r);
    if (g.affine) {
      const auto& th = d.roots()[d.highest_root(g.component)].coeffs;
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) row[j] += Rat(th[i]) * Rat(d.cartan()(i, j));
      b.emplace_back(1);
    } else {
      for (std::size_t j = 0; j < r; ++j) row[j] = Rat(d.cartan()(g.simple_root, j));
      b.emplace_back(0);
    }
    A.push_back(row);
  }
  std::vector<Rat> c(r);
  if (!A.empty() && !solve_rational(A, b, c)) throw Error("INTERNAL", "no vertex for level");
  return c;
}

/// Coweight avatar of the double coset W̃_K x W̃_K at a very special level:
/// dominant representative of x(v_K) − v_K.
inline CoWeight very_special_avatar(const IwElement& x, const std::vector<Rat>& vertex) {
  const RootDatum& d = x.datum();
  const std::size_t r = d.rank();
  std::vector<Rat> u(r);
  const auto& perm = d.weyl(x.fin()).root_perm;
  for (std::size_t j = 0; j < r; ++j) {
    if (vertex[j] == 0) continue;
    const auto& cc = d.roots()[perm[j]].coroot_coeffs;
    for (std::size_t i = 0; i < r; ++i) u[i] += vertex[j] * Rat(cc[i] - (i == j ? 1 : 0));
  }
  std::vector<Int> shift(d.dim(), Int(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (!is_integral(u[i])) throw Error("NOT_VERY_SPECIAL", "vertex displacement is not integral");
    const Int ui = rat_numerator(u[i]);
    for (std::size_t k = 0; k < d.dim(); ++k) shift[k] += ui * d.simple_coroots()[i].coords[k];
  }
  return dominant_rep(d, d.add(x.trans(), d.reduce(shift)));
}

inline std::vector<CoWeight> adm_very_special(const DatumPtr& d, const CoWeight& mu, std::vector<int> K) {
  K = normalize_level(*d, std::move(K));
  if (!is_very_special(d, K)) throw Error("NOT_VERY_SPECIAL", "level {" + join(K) + "} is not very special");
  require_dominant(*d, mu);
  return dominant_below(*d, mu);
}

/// Avatars of adm_K at a very special level, as a sorted set.
inline std::vector<CoWeight> very_special_avatars(const AdmissibleSet& s) {
  if (s.elements.empty()) return {};
  const RootDatum& d = s.elements.front().datum();
  const std::vector<Rat> v = level_vertex(d, s.level);
  std::set<CoWeight> out;
  for (const auto& x : s.elements) out.insert(very_special_avatar(x, v));
  return {out.begin(), out.end()};
}

struct ClosurePoset {
  std::vector<IwElement> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)
};

inline ClosurePoset closure_poset(const AdmissibleSet& s, unsigned threads = 1) {
  ClosurePoset p;
  p.nodes = s.elements;
  std::map<IwElement, std::size_t> index;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) index[p.nodes[i]] = i;
  if (s.kind == AdmKind::iwahori) {
    auto below = parallel_map(p.nodes, threads, [](const IwElement& x) { return coatoms(x); });
    for (std::size_t j = 0; j < p.nodes.size(); ++j) {
      std::set<std::size_t> lows;
      for (const auto& c : below[j])
        if (auto it = index.find(c); it != index.end()) lows.insert(it->second);
      for (std::size_t i : lows) p.covers.emplace_back(i, j);
    }
  } else {
    const std::size_t n = p.nodes.size();
    std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) leq[i][j] = i != j && bruhat_leq(p.nodes[i], p.nodes[j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!leq[i][j]) continue;
        bool cover = true;
        for (std::size_t k = 0; k < n && cover; ++k) cover = !(leq[i][k] && leq[k][j]);
        if (cover) p.covers.emplace_back(i, j);
      }
  }
  std::sort(p.covers.begin(), p.covers.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.second, a.first) < std::make_pair(b.second, b.first);
  });
  return p;
}

}  // namespace iwk
