// Levi reduction: the Levi M of a Newton point, M-minuscule representatives
// of π₁(M)_I, the set I_{μ,b,M}, (α,r)-moves, constrained path search and the
// short-element check.
#pragma once

#include "iwk/sigma_conj.hpp"

#include <deque>

namespace iwk {

struct LeviDatum {
  DatumPtr parent;
  std::vector<int> J;  // simple roots of Σ_M, as indices of the parent's simple roots
  DatumPtr M;          // Σ_M on the same lattice; its π₁ is π₁(M)_I with σ action

  const FgAbelian& pi1_M() const { return M->pi1(); }
  const IntMatrix& sigma_action() const { return M->pi1_sigma(); }
};

inline LeviDatum levi_from_subset(const DatumPtr& d, std::vector<int> J) {
  std::sort(J.begin(), J.end());
  return {d, J, d->levi(J)};
}

inline LeviDatum levi_of_newton(const DatumPtr& d, const RatCoWeight& nu) {
  if (!is_dominant(*d, nu)) throw Error("NOT_DOMINANT", to_string(nu) + " is not dominant");
  std::vector<int> J;
  for (std::size_t i = 0; i < d->rank(); ++i)
    if (d->pair(d->root_pairing()[i], nu) == 0) J.push_back(static_cast<int>(i));
  return levi_from_subset(d, J);
}

/// True when root k of the parent lies in Σ_M.
inline bool in_levi(const LeviDatum& L, int k) {
  const auto& c = L.parent->roots()[k].coeffs;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0 && !std::binary_search(L.J.begin(), L.J.end(), static_cast<int>(i))) return false;
  return true;
}

inline bool is_m_dominant(const LeviDatum& L, const CoWeight& l) { return is_dominant(*L.M, l); }

inline bool is_m_minuscule(const LeviDatum& L, const CoWeight& l) {
  const RootDatum& M = *L.M;
  const std::vector<Int> p = M.simple_pairings(l);
  for (std::size_t k = 0; k < M.positive_count(); ++k)
    if (abs_int(M.root_pairing_from_simple(static_cast<int>(k), p)) > 1) return false;
  return true;
}

struct MinusculeRep {
  CoWeight mu;
  int w = 0;  // finite part of τ_x = t^{μ_x} w_x, as an index into M's Weyl table
};

/// The M-dominant M-minuscule coweight in the class x ∈ π₁(M)_I.
inline MinusculeRep minuscule_dominant_rep(const LeviDatum& L, const std::vector<Int>& x) {
  const RootDatum& M = *L.M;
  const std::vector<Int> xr = M.pi1().reduce(x);
  CoWeight l = dominant_rep(M, M.reduce(M.pi1().lift(xr)));
  for (bool lowered = true; lowered;) {
    lowered = false;
    const std::vector<Int> p = M.simple_pairings(l);
    for (std::size_t k = 0; k < M.positive_count() && !lowered; ++k)
      if (M.root_pairing_from_simple(static_cast<int>(k), p) >= 2) {
        l = dominant_rep(M, M.sub(l, M.roots()[k].coroot));
        lowered = true;
      }
  }
  if (M.pi1_class(l) != xr || !is_m_minuscule(L, l))
    throw Error("NO_REPRESENTATIVE", "no M-minuscule representative for class (" + join(x) + ")");
  return {l, omega_of_class(L.M, l).fin()};
}

inline std::vector<Int> class_in_m(const LeviDatum& L, const CoWeight& l) { return L.M->pi1_class(l); }

/// μ_y ≼ μ, read through the dominant representative of μ_y.
inline bool class_below(const LeviDatum& L, const std::vector<Int>& y, const CoWeight& mu) {
  const CoWeight m = minuscule_dominant_rep(L, y).mu;
  return dominance_leq(*L.parent, dominant_rep(*L.parent, m), mu);
}

/// ⟨α, λ⟩ ≥ −1 for every positive root α of Σ.
inline bool is_weakly_dominant(const RootDatum& d, const CoWeight& l) {
  const std::vector<Int> p = d.simple_pairings(l);
  for (std::size_t k = 0; k < d.positive_count(); ++k)
    if (d.root_pairing_from_simple(static_cast<int>(k), p) < -1) return false;
  return true;
}

/// M-length: Iwahori–Matsumoto length over Σ_M, or −1 when the finite part is outside W_M.
inline std::int64_t m_length(const LeviDatum& L, const IwElement& x) {
  const RootDatum& d = *L.parent;
  for (int j : d.weyl(x.fin()).word)
    if (!std::binary_search(L.J.begin(), L.J.end(), j)) return -1;
  const std::vector<Int> p = d.simple_pairings(x.trans());
  const int wi = d.weyl(x.fin()).inverse;
  Int total = 0;
  for (std::size_t k = 0; k < d.positive_count(); ++k) {
    if (!in_levi(L, static_cast<int>(k))) continue;
    const Int a = d.root_pairing_from_simple(static_cast<int>(k), p);
    total += d.maps_positive(wi, static_cast<int>(k)) ? abs_int(a) : abs_int(a - 1);
  }
  return to_i64(total);
}

struct ShortElement {
  int u = 0;
  IwElement w_sharp;
  bool ok = false;
};

/// u ∈ ^J W₀ minimal with u(ν_w) dominant, w♯ = u·w·σ(u)⁻¹, ok when w♯ ∈ Ω_M.
inline ShortElement short_element_check(const IwElement& w) {
  if (!is_straight(w)) throw Error("NOT_STRAIGHT", element_label(w) + " is not σ-straight");
  const DatumPtr& dp = w.datum_ptr();
  const RootDatum& d = *dp;
  RatCoWeight nu = newton(w).nu;
  int u = chamber_descent(d, nu);
  const LeviDatum L = levi_of_newton(dp, nu);
  for (bool reduced = true; reduced;) {
    reduced = false;
    for (int j : L.J) {
      const int v = d.weyl(u).lmul[j];
      if (d.weyl_length(v) < d.weyl_length(u)) {
        u = v;
        reduced = true;
      }
    }
  }
  ShortElement out;
  out.u = u;
  const IwElement fu = finite(dp, u);
  out.w_sharp = mul(mul(fu, w), inv(apply_sigma(fu)));
  out.ok = m_length(L, out.w_sharp) == 0;
  return out;
}

/// κ_M(b) in the σ-coinvariants of π₁(M)_I, read from a straight witness.
inline std::vector<Int> kappa_m(const LeviDatum& L, const IwElement& witness) {
  const ShortElement s = short_element_check(witness);
  if (!s.ok) throw Error("INTERNAL", "short element check fails on " + element_label(witness));
  return L.M->kottwitz_class(s.w_sharp.trans());
}

inline std::vector<Int> coinvariant_class(const LeviDatum& L, const std::vector<Int>& x) {
  return L.M->pi1_coinvariants().project(L.M->pi1().lift(x));
}

/// I_{μ,b,M}: classes x ∈ π₁(M)_I with the coinvariant class of κ_M(b) and μ_x ≼ μ.
inline std::vector<std::vector<Int>> i_mu_b_m(const DatumPtr& d, const CoWeight& mu, const SigmaClassInvariants& b,
                                              const LeviDatum& L) {
  if (L.parent != d || L.J != levi_of_newton(d, b.newton).J)
    throw Error("LEVI_MISMATCH", "Levi does not centralize the Newton point " + to_string(b.newton));
  std::optional<IwElement> witness;
  for (const auto& e : b_g_mu(d, mu))
    if (e.invariants == b) witness = e.witness;
  if (!witness) throw Error("INVARIANTS_NOT_IN_BGMU", "σ-class " + to_string(b.newton) + " is not in B(G, μ)");
  const std::vector<Int> kappa = kappa_m(L, *witness);
  std::set<std::vector<Int>> out;
  for (const CoWeight& lam : dominant_below(*d, mu))
    for (const CoWeight& l : weyl_orbit(*d, lam)) {
      if (!is_m_dominant(L, l) || !is_m_minuscule(L, l)) continue;
      const std::vector<Int> x = class_in_m(L, l);
      if (coinvariant_class(L, x) == kappa) out.insert(x);
    }
  return {out.begin(), out.end()};
}

struct OrbitSize {
  int size = 0;
  int h = 0;
  int multiple = 0;  // size / h ∈ {1, 2, 3}
};

/// σ-orbit size of root k, classified against h = number of components in
/// the σ-orbit of its component.
inline OrbitSize orbit_size(const RootDatum& d, int k) {
  OrbitSize o;
  for (int j = k;;) {
    ++o.size;
    j = d.sigma_root(j);
    if (j == k) break;
  }
  const int c = d.roots()[k].component;
  for (int j = c;;) {
    ++o.h;
    j = d.sigma_component(j);
    if (j == c) break;
  }
  if (o.size % o.h != 0 || o.size / o.h < 1 || o.size / o.h > 3)
    throw Error("CLASS_ERROR", "orbit size " + std::to_string(o.size) + " is not in {h, 2h, 3h} for h = " +
                                   std::to_string(o.h));
  o.multiple = o.size / o.h;
  return o;
}

inline CoWeight sigma_power(const RootDatum& d, CoWeight l, int r) {
  for (int i = 0; i < r; ++i) l = d.sigma(l);
  return l;
}

struct Move {
  int alpha = 0;  // root index in the parent
  int r = 0;
  std::vector<Int> from_x, to_x;
};

/// x′ = x + α^∨ − σ^r α^∨ in π₁(M)_I.
inline std::vector<Int> move_target(const LeviDatum& L, const std::vector<Int>& x, int alpha, int r) {
  const RootDatum& d = *L.parent;
  const CoWeight& a = d.roots()[alpha].coroot;
  const std::vector<Int> delta = class_in_m(L, d.sub(a, sigma_power(d, a, r)));
  return L.M->pi1().add(x, delta);
}

inline bool move_applicable(const CoWeight& mu, const LeviDatum& L, const std::vector<Int>& x, int alpha, int r) {
  if (in_levi(L, alpha)) throw Error("ALPHA_IN_LEVI", "root " + std::to_string(alpha) + " lies in Σ_M");
  const RootDatum& d = *L.parent;
  const FgAbelian& P = L.M->pi1();
  const CoWeight& a = d.roots()[alpha].coroot;
  const std::vector<Int> xa = P.add(x, class_in_m(L, a));
  const std::vector<Int> xs = P.add(x, P.negate(class_in_m(L, sigma_power(d, a, r))));
  const std::vector<Int> xt = move_target(L, x, alpha, r);
  for (const auto& y : {x, xa, xs, xt})
    if (!class_below(L, y, mu)) return false;
  return true;
}

/// x →(α,r) x′ without a factorization through (α,i) and (σ^i α, r−i) moves.
inline bool is_irreducible_arrow(const CoWeight& mu, const LeviDatum& L, const std::vector<Int>& x, int alpha, int r) {
  if (!move_applicable(mu, L, x, alpha, r)) return false;
  const RootDatum& d = *L.parent;
  const std::vector<Int> xt = move_target(L, x, alpha, r);
  for (int i = 1; i < r; ++i) {
    int sa = alpha;
    for (int k = 0; k < i; ++k) sa = d.sigma_root(sa);
    const std::vector<Int> y1 = move_target(L, x, alpha, i);
    if (move_applicable(mu, L, x, alpha, i) && move_applicable(mu, L, y1, sa, r - i) &&
        move_target(L, y1, sa, r - i) == xt)
      return false;
    const std::vector<Int> y2 = move_target(L, x, sa, r - i);
    if (move_applicable(mu, L, x, sa, r - i) && move_applicable(mu, L, y2, alpha, i) &&
        move_target(L, y2, alpha, i) == xt)
      return false;
  }
  return true;
}

/// Roots α ∈ Σ − Σ_M with α^∨ M-dominant and M-minuscule, paired with their r bound.
inline std::vector<std::pair<int, int>> allowed_moves(const LeviDatum& L) {
  const RootDatum& d = *L.parent;
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k < d.roots().size(); ++k) {
    const int a = static_cast<int>(k);
    if (in_levi(L, a)) continue;
    const CoWeight& c = d.roots()[k].coroot;
    if (!is_m_dominant(L, c) || !is_m_minuscule(L, c)) continue;
    const OrbitSize o = orbit_size(d, a);
    out.emplace_back(a, o.multiple == 3 ? 2 * o.h - 1 : o.h);
  }
  return out;
}

/// Shortest constrained move path from x to y, or nothing.
inline std::optional<std::vector<Move>> find_path(const CoWeight& mu, const LeviDatum& L, const std::vector<Int>& x,
                                                  const std::vector<Int>& y) {
  const FgAbelian& P = L.M->pi1();
  const std::vector<Int> xr = P.reduce(x), yr = P.reduce(y);
  if (xr == yr) return std::vector<Move>{};
  if (L.parent->twist_trivial()) return std::nullopt;
  const auto moves = allowed_moves(L);
  std::map<std::vector<Int>, Move> parent;
  std::deque<std::vector<Int>> queue{xr};
  std::set<std::vector<Int>> seen{xr};
  while (!queue.empty()) {
    const std::vector<Int> cur = queue.front();
    queue.pop_front();
    for (const auto& [a, rmax] : moves)
      for (int r = 1; r <= rmax; ++r) {
        if (!move_applicable(mu, L, cur, a, r)) continue;
        std::vector<Int> nxt = move_target(L, cur, a, r);
        if (!seen.insert(nxt).second) continue;
        parent[nxt] = Move{a, r, cur, nxt};
        if (nxt == yr) {
          std::vector<Move> path;
          for (std::vector<Int> z = yr; z != xr; z = parent[z].from_x) path.push_back(parent[z]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(std::move(nxt));
      }
  }
  return std::nullopt;
}

}  // namespace iwk
