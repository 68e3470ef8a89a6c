// σ-conjugacy invariants on W̃: Newton points, Kottwitz classes, σ-straight
// elements, and B(G, μ) via straight elements of Adm(μ).
#pragma once

#include "iwk/admissible.hpp"

namespace iwk {

struct SigmaClassInvariants {
  RatCoWeight newton;          // dominant ν̄
  std::vector<Int> kottwitz;   // canonical coordinates in π₁(G)_Γ
  bool is_basic = false;

  bool operator==(const SigmaClassInvariants& o) const {
    return newton == o.newton && kottwitz == o.kottwitz;
  }
  bool operator<(const SigmaClassInvariants& o) const {
    if (kottwitz != o.kottwitz) return kottwitz < o.kottwitz;
    return newton < o.newton;
  }
};

struct BgMuEntry {
  SigmaClassInvariants invariants;
  IwElement witness;
};

/// x·σ(x)···σ^{k−1}(x).
inline IwElement twisted_power(const IwElement& x, int k) {
  IwElement y = identity(x.datum_ptr());
  IwElement cur = x;
  for (int i = 0; i < k; ++i) {
    y = mul(y, cur);
    cur = apply_sigma(cur);
  }
  return y;
}

struct NewtonData {
  RatCoWeight nu;
  RatCoWeight nu_dom;
  int period = 1;  // n with x·σ(x)···σ^{n−1}(x) a translation and σ^n = 1
};

inline NewtonData newton(const IwElement& x) {
  const RootDatum& d = x.datum();
  const int e = d.sigma_order();
  const IwElement z = twisted_power(x, e);
  IwElement p = z;
  int m = 1;
  const int cap = static_cast<int>(d.weyl_order()) + 1;
  while (p.fin() != d.weyl_identity()) {
    p = mul(p, z);
    if (++m > cap) throw Error("INTERNAL", "finite part has no finite order");
  }
  NewtonData out;
  out.period = e * m;
  out.nu = d.rational(p.trans());
  for (Rat& c : out.nu.coords) c /= out.period;
  out.nu_dom = dominant_rep(d, out.nu);
  return out;
}

inline std::vector<Int> kottwitz(const IwElement& x) { return x.datum().kottwitz_class(x.trans()); }

inline SigmaClassInvariants invariants(const IwElement& x) {
  SigmaClassInvariants inv;
  inv.newton = newton(x).nu_dom;
  inv.kottwitz = kottwitz(x);
  inv.is_basic = is_basic_newton(x.datum(), inv.newton);
  return inv;
}

/// ⟨2ρ_Σ, ν̄⟩.
inline Rat two_rho_pairing(const RootDatum& d, const RatCoWeight& nu) { return d.pair(d.two_rho(), nu); }

/// σ-straightness: ℓ of the twisted n-th power equals n·ℓ(x) up to the
/// period, cross-checked against ℓ(x) = ⟨2ρ, ν̄_x⟩.
inline bool is_straight(const IwElement& x) {
  const std::int64_t l = length(x);
  const NewtonData nd = newton(x);
  const bool by_formula = two_rho_pairing(x.datum(), nd.nu_dom) == Rat(l);
  bool additive = true;
  IwElement y = identity(x.datum_ptr());
  IwElement cur = x;
  for (int k = 1; k <= nd.period && additive; ++k) {
    y = mul(y, cur);
    cur = apply_sigma(cur);
    additive = length(y) == k * l;
  }
  if (additive != by_formula) throw Error("INTERNAL", "straightness criteria disagree on " + element_label(x));
  return additive;
}

inline bool leq_b(const RootDatum& d, const SigmaClassInvariants& a, const SigmaClassInvariants& b) {
  return a.kottwitz == b.kottwitz && rational_dominance_leq(d, a.newton, b.newton);
}

inline std::vector<IwElement> straight_elements(const AdmissibleSet& s) {
  if (s.kind != AdmKind::iwahori) throw Error("BAD_KIND", "straight_elements needs an Iwahori-level set");
  std::vector<IwElement> out;
  for (const auto& x : s.elements)
    if (is_straight(x)) out.push_back(x);
  return out;
}

/// Length-zero elements used as extra σ-conjugators: lifts of ±generators of π₁(G)_I.
inline std::vector<IwElement> omega_conjugators(const DatumPtr& d) {
  std::vector<IwElement> out;
  const FgAbelian& p = d->pi1();
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (int sign : {1, -1}) {
      std::vector<Int> e(p.dim(), Int(0));
      e[i] = sign;
      const IwElement w = omega_of_class(d, d->reduce(p.lift(e)));
      if (w != identity(d) && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
  return out;
}

/// σ-conjugation orbit of x under S ∪ Ω-conjugators, within length ≤ bound
/// and within the Ω-class of x (length alone does not bound the orbit when σ
/// moves central translations).
inline std::set<IwElement> sigma_orbit(const IwElement& x, std::int64_t bound,
                                       const std::vector<IwElement>& extra) {
  const DatumPtr& d = x.datum_ptr();
  std::vector<std::pair<IwElement, IwElement>> conj;
  for (std::size_t s = 0; s < d->generators().size(); ++s) {
    const IwElement g = generator(d, static_cast<int>(s));
    conj.emplace_back(g, inv(apply_sigma(g)));
  }
  for (const auto& g : extra) conj.emplace_back(g, inv(apply_sigma(g)));
  const std::vector<Int> cls = omega_component(x);
  std::set<IwElement> seen{x};
  std::vector<IwElement> queue{x};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& [g, gs] : conj) {
      IwElement y = mul(mul(g, queue[q]), gs);
      if (length(y) > bound || omega_component(y) != cls || !seen.insert(y).second) continue;
      queue.push_back(std::move(y));
    }
  return seen;
}

/// B(G, μ) from straight elements of Adm(μ), grouped by σ-conjugation orbit
/// closure; witness = canonically first straight element of each class.
inline std::vector<BgMuEntry> b_g_mu_by_straight(const DatumPtr& d, const CoWeight& mu, unsigned threads = 1) {
  const AdmissibleSet A = adm(d, mu, threads);
  std::int64_t bound = 0;
  for (const auto& x : A.elements) bound = std::max(bound, length(x));
  const auto extra = omega_conjugators(d);
  const std::vector<IwElement> straight = straight_elements(A);
  std::set<IwElement> assigned;
  std::vector<BgMuEntry> out;
  for (const auto& x : straight) {
    if (assigned.count(x)) continue;
    const auto orbit = sigma_orbit(x, bound, extra);
    assigned.insert(orbit.begin(), orbit.end());
    out.push_back({invariants(x), x});
  }
  std::sort(out.begin(), out.end(), [&](const BgMuEntry& a, const BgMuEntry& b) {
    if (a.invariants.kottwitz != b.invariants.kottwitz) return a.invariants.kottwitz < b.invariants.kottwitz;
    const Rat la = two_rho_pairing(*d, a.invariants.newton), lb = two_rho_pairing(*d, b.invariants.newton);
    if (la != lb) return la < lb;
    return a.invariants.newton < b.invariants.newton;
  });
  return out;
}

/// B(G, μ) by direct invariant filtering: invariants of all straight elements
/// of W̃_a·τ_μ with length ≤ ℓ(t^μ), kept when κ = κ(t^μ) and ν̄ ≤ galois_average(μ).
inline std::vector<SigmaClassInvariants> b_g_mu_by_invariants(const DatumPtr& d, const CoWeight& mu) {
  require_dominant(*d, mu);
  const IwElement t = translation(d, mu);
  const std::int64_t L = length(t);
  const std::vector<Int> kappa = kottwitz(t);
  const RatCoWeight avg = galois_average(*d, mu);
  std::set<SigmaClassInvariants> out;
  std::set<IwElement> seen{tau_of(d, mu)};
  std::vector<IwElement> frontier{*seen.begin()};
  for (std::int64_t l = 0; l <= L; ++l) {
    std::vector<IwElement> next;
    for (const auto& x : frontier) {
      if (is_straight(x)) {
        SigmaClassInvariants inv = invariants(x);
        if (inv.kottwitz == kappa && rational_dominance_leq(*d, inv.newton, avg)) out.insert(inv);
      }
      if (l == L) continue;
      for (std::size_t s = 0; s < d->generators().size(); ++s)
        if (!is_left_descent(x, static_cast<int>(s))) {
          IwElement y = left_mul_gen(x, static_cast<int>(s));
          if (seen.insert(y).second) next.push_back(std::move(y));
        }
    }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

inline std::vector<BgMuEntry> b_g_mu(const DatumPtr& d, const CoWeight& mu, unsigned threads = 1) {
  std::vector<BgMuEntry> entries = b_g_mu_by_straight(d, mu, threads);
  std::set<SigmaClassInvariants> a, b;
  for (const auto& e : entries)
    if (!a.insert(e.invariants).second)
      throw Error("INTERNAL", "two straight classes share invariants");
  for (const auto& inv : b_g_mu_by_invariants(d, mu)) b.insert(inv);
  if (a != b) throw Error("BGMU_MISMATCH", "straight-class and invariant enumerations disagree");
  return entries;
}

}  // namespace iwk
