// KR and EKOR stratum reports: σ-supports, basic-locus flags, compact-type
// factors, π₁(G)_I^σ, (τσ)-orbit parahorics and component-count predictions.
#pragma once

#include "iwk/sigma_conj.hpp"

namespace iwk {

/// Orbit closure of `seed` under the permutation `perm` of S, sorted.
inline std::vector<int> perm_closure(const std::vector<int>& perm, const std::vector<int>& seed) {
  std::set<int> out;
  for (int s : seed)
    for (int t = s; out.insert(t).second;) t = perm[t];
  return {out.begin(), out.end()};
}

/// Supp_σ(w): (τσ)-orbit closure of the letters of a reduced word of w.
inline std::vector<int> supp_sigma(const IwElement& w, const IwElement& tau) {
  check_same(w, tau);
  const std::vector<int> perm = tau_sigma_action(tau);
  return perm_closure(perm, reduced_word(w).word);
}

/// Supp_σ with τ the Ω-tail of x.
inline std::vector<int> supp_sigma(const IwElement& x) { return supp_sigma(x, reduced_word(x).omega); }

inline bool kr_basic_flag(const IwElement& w, const IwElement& tau) {
  return subgroup_finite(w.datum(), supp_sigma(w, tau));
}

inline bool kr_basic_flag(const IwElement& x) { return kr_basic_flag(x, reduced_word(x).omega); }

/// Simple factors of the affine diagram: σ-orbits of components, as generator sets.
inline std::vector<std::vector<int>> affine_factors(const RootDatum& d) {
  std::vector<std::vector<int>> out;
  std::vector<bool> done(d.components().size(), false);
  for (std::size_t c = 0; c < d.components().size(); ++c) {
    if (done[c]) continue;
    std::vector<int> nodes;
    for (int k = static_cast<int>(c); !done[k]; k = d.sigma_component(k)) {
      done[k] = true;
      for (const AffineGen& g : d.generators())
        if (g.component == k) nodes.push_back(g.index);
    }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(nodes);
  }
  return out;
}

/// Per simple factor: whether τσ acts transitively on its nodes.
inline std::vector<bool> compact_type_factors(const IwElement& tau) {
  const std::vector<int> perm = tau_sigma_action(tau);
  std::vector<bool> out;
  for (const auto& nodes : affine_factors(tau.datum()))
    out.push_back(perm_closure(perm, {nodes.front()}).size() == nodes.size());
  return out;
}

/// π₁(G)_I^σ as a subgroup of π₁(G)_I.
inline Subgroup pi1_I_sigma(const RootDatum& d) { return fixed_subgroup(d.pi1(), d.pi1_sigma()); }

struct OrbitParahoric {
  std::vector<int> generators;
  bool finite = false;
};

/// Distinct (τσ)-orbits K_s of simple reflections.
inline std::vector<OrbitParahoric> sigma_orbit_parahorics(const IwElement& tau) {
  const std::vector<int> perm = tau_sigma_action(tau);
  std::vector<OrbitParahoric> out;
  std::vector<bool> done(perm.size(), false);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (done[s]) continue;
    OrbitParahoric o;
    o.generators = perm_closure(perm, {static_cast<int>(s)});
    for (int t : o.generators) done[t] = true;
    o.finite = subgroup_finite(tau.datum(), o.generators);
    out.push_back(std::move(o));
  }
  return out;
}

struct ComponentReport {
  FgAbelian pi1_sigma;
  std::vector<bool> compact_type;   // per simple factor
  std::vector<bool> mu_central;     // per simple factor
  std::optional<Int> count;         // |π₁(G)_I^σ| when finite and μ noncentral everywhere
  std::string symbolic;             // descriptor when count is absent
  std::string status = "predicted";
  std::vector<int> level;
};

/// μ is central on a factor when every root of its components pairs to zero with μ.
inline std::vector<bool> mu_central_factors(const RootDatum& d, const CoWeight& mu) {
  std::vector<bool> out;
  std::vector<bool> done(d.components().size(), false);
  for (std::size_t c = 0; c < d.components().size(); ++c) {
    if (done[c]) continue;
    bool central = true;
    for (int k = static_cast<int>(c); !done[k]; k = d.sigma_component(k)) {
      done[k] = true;
      for (std::size_t r = 0; r < d.positive_count(); ++r)
        if (d.roots()[r].component == k && d.pair(d.roots()[r].covector, mu) != 0) central = false;
    }
    out.push_back(central);
  }
  return out;
}

inline ComponentReport component_report(const DatumPtr& d, const CoWeight& mu, const SigmaClassInvariants& b,
                                        std::vector<int> K = {}) {
  K = normalize_level(*d, std::move(K));
  bool found = false;
  for (const auto& e : b_g_mu(d, mu))
    if (e.invariants == b) found = true;
  if (!found) throw Error("INVARIANTS_NOT_IN_BGMU", "σ-class " + to_string(b.newton) + " is not in B(G, μ)");
  ComponentReport r;
  r.level = K;
  r.pi1_sigma = pi1_I_sigma(*d).group;
  r.compact_type = compact_type_factors(tau_of(d, mu));
  r.mu_central = mu_central_factors(*d, mu);
  const bool any_central = std::find(r.mu_central.begin(), r.mu_central.end(), true) != r.mu_central.end();
  if (any_central)
    r.symbolic = "G(Q_p)/G(Z_p)-torsor";
  else if (r.pi1_sigma.is_finite())
    r.count = r.pi1_sigma.order();
  else
    r.symbolic = "pi1(G)_I^sigma = " + r.pi1_sigma.describe();
  return r;
}

struct StratumReport {
  IwElement element;
  std::int64_t length = 0;
  std::vector<int> supp_sigma;
  bool basic = false;
  bool is_ekor = false;   // member of ^K Adm(μ)
  bool is_kr = false;     // member of Adm(μ)_K (minimal double-coset representative)
  std::vector<Int> omega_class;
};

inline StratumReport stratum_report(const IwElement& x) {
  StratumReport r;
  r.element = x;
  r.length = length(x);
  r.supp_sigma = supp_sigma(x);
  r.basic = subgroup_finite(x.datum(), r.supp_sigma);
  r.omega_class = omega_component(x);
  return r;
}

/// Rows for ^K Adm(μ) ∪ Adm(μ)_K, canonically ordered.
inline std::vector<StratumReport> strata_table(const DatumPtr& d, const CoWeight& mu, std::vector<int> K,
                                               unsigned threads = 1) {
  const AdmissibleSet ekor = k_adm(d, mu, K, threads);
  const AdmissibleSet kr = adm_K(d, mu, K, threads);
  std::set<IwElement> ek(ekor.elements.begin(), ekor.elements.end()), kk(kr.elements.begin(), kr.elements.end());
  std::vector<IwElement> all(ek.begin(), ek.end());
  for (const auto& x : kk)
    if (!ek.count(x)) all.push_back(x);
  canonical_sort(all);
  auto rows = parallel_map(all, threads, [](const IwElement& x) { return stratum_report(x); });
  for (auto& r : rows) {
    r.is_ekor = ek.count(r.element) > 0;
    r.is_kr = kk.count(r.element) > 0;
  }
  return rows;
}

}  // namespace iwk
