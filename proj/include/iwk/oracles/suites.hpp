// Oracle suites: each compares an optimized routine with its brute-force
// counterpart over a bounded input family and returns a Report.
#pragma once

#include "iwk/oracles/oracles.hpp"
#include "iwk/strata.hpp"

namespace iwk::oracle {

inline const std::vector<std::string>& criterion_presets() {
  static const std::vector<std::string> p{"GL2", "SL2", "PGL2", "SL3", "GSp4", "ResE2-GL2", "U3-unram"};
  return p;
}

/// Dominant μ with free coordinates in [−bound, bound] and every torsion value.
inline std::vector<CoWeight> dominant_matrix(const RootDatum& d, int bound = 2) {
  const std::size_t f = d.free_rank();
  const auto& tors = d.lattice().torsion();
  std::vector<Int> lo(d.dim()), hi(d.dim());
  for (std::size_t i = 0; i < f; ++i) lo[i] = -bound, hi[i] = bound;
  for (std::size_t j = 0; j < tors.size(); ++j) lo[f + j] = 0, hi[f + j] = tors[j] - 1;
  std::vector<CoWeight> out;
  std::vector<Int> c = lo;
  for (;;) {
    const CoWeight mu = d.reduce(c);
    if (is_dominant(d, mu)) out.push_back(mu);
    std::size_t i = 0;
    while (i < c.size() && c[i] == hi[i]) c[i] = lo[i], ++i;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

/// Elements of length ≤ L in the Ω-classes of 0 and ±(unit vectors of Λ),
/// enumerated by left multiplication with the oracle's own product.
inline std::vector<IwElement> elements_up_to(const DatumPtr& d, int L) {
  std::vector<IwElement> seeds{identity(d)};
  for (std::size_t i = 0; i < d->dim(); ++i)
    for (int sign : {1, -1}) {
      std::vector<Int> v(d->dim(), Int(0));
      v[i] = sign;
      seeds.push_back(omega_of_class(d, d->reduce(v)));
    }
  std::set<IwElement> seen;
  std::vector<std::pair<IwElement, int>> queue;
  for (const auto& s : seeds)
    if (seen.insert(s).second) queue.emplace_back(s, 0);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    if (queue[q].second >= L) continue;
    for (std::size_t s = 0; s < d->generators().size(); ++s) {
      IwElement z = times(gen(d, static_cast<int>(s)), queue[q].first);
      if (seen.insert(z).second) queue.emplace_back(z, queue[q].second + 1);
    }
  }
  std::vector<IwElement> out;
  for (auto& [x, k] : queue) out.push_back(x);
  return out;
}

inline std::string describe(const IwElement& x) {
  return x.datum().name() + " t^(" + join(x.trans().coords) + ") w[" + join(x.datum().weyl(x.fin()).word, "") + "]";
}

/// Iwahori–Matsumoto length against BFS word length, for ℓ ≤ L.
inline Report suite_length(const DatumPtr& d, int L = 5) {
  Report r;
  for (const auto& x : elements_up_to(d, L)) {
    const int b = bfs_length(x, L + 1);
    if (b > L) continue;
    r.check(length(x) == b, describe(x), std::to_string(length(x)), std::to_string(b));
  }
  return r;
}

/// bruhat_leq against subword order on all pairs with ℓ ≤ L.
inline Report suite_bruhat(const DatumPtr& d, int L = 4) {
  Report r;
  std::vector<IwElement> small;
  for (const auto& x : elements_up_to(d, L))
    if (bfs_length(x, L + 1) <= L) small.push_back(x);
  for (const auto& y : small) {
    const std::set<IwElement> below = subword_products(y, L + 2);
    for (const auto& x : small) {
      const bool main = bruhat_leq(x, y), ref = below.count(x) > 0;
      r.check(main == ref, describe(x) + " <= " + describe(y), main ? "true" : "false", ref ? "true" : "false");
    }
  }
  return r;
}

/// adm(μ) against the union of subword down-sets of the W₀-translates of t^μ,
/// for ℓ(t^μ) within the down-set cap.
inline Report suite_adm(const DatumPtr& d, const std::vector<CoWeight>& mus) {
  Report r;
  for (const auto& mu : mus) {
    if (length(translation(d, mu)) > caps().downset_length) continue;
    const AdmissibleSet A = adm(d, mu);
    std::vector<IwElement> maxima;
    for (std::size_t w = 0; w < d->weyl_order(); ++w) {
      const CoWeight l = d->reduce(d->weyl(static_cast<int>(w)).mat.apply(mu.coords));
      maxima.push_back(IwElement(d, l, 0));
    }
    const std::set<IwElement> ref = down_set(maxima);
    const std::set<IwElement> main(A.elements.begin(), A.elements.end());
    r.check(main == ref, d->name() + " mu=" + to_string(mu), std::to_string(main.size()), std::to_string(ref.size()));
  }
  return r;
}

/// dominant_below against box enumeration of μ − Σ c_i α_i^∨.
inline Report suite_dominance(const DatumPtr& d, const std::vector<CoWeight>& mus) {
  Report r;
  for (const auto& mu : mus) {
    const auto main = dominant_below(*d, mu);
    const std::set<CoWeight> ref = dominant_interval(d, mu);
    r.check(std::set<CoWeight>(main.begin(), main.end()) == ref, d->name() + " mu=" + to_string(mu),
            std::to_string(main.size()), std::to_string(ref.size()));
    for (const auto& l : main) {
      std::vector<CoWeight> simple(d->simple_coroots().begin(), d->simple_coroots().end());
      const bool cone = cone_member(*d, d->sub(mu, l), simple, 8);
      r.check(cone, d->name() + " " + to_string(mu) + " - " + to_string(l), "in cone", cone ? "in cone" : "not in cone");
    }
  }
  return r;
}

/// SNF of the π₁ presentation, and π₁(G)_I^σ against direct counting.
inline Report suite_smith(const DatumPtr& d) {
  Report r;
  const FgAbelian& p = d->pi1();
  const IntMatrix& rel = p.presentation();
  const SmithForm s = smith_normal_form(rel);
  r.check(verify_smith(rel, s.U, s.D, s.V), d->name() + " pi1 presentation", "snf", "verified");

  // fixed subgroup: free rank = nullity of (σ − 1) on the free part, torsion = fixed torsion points
  const Subgroup fix = pi1_I_sigma(*d);
  const std::size_t f = p.free_rank(), n = p.dim();
  const IntMatrix& sig = d->pi1_sigma();
  std::vector<std::vector<Rat>> a(f, std::vector<Rat>(f));
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) a[i][j] = Rat(sig(i, j) - (i == j ? 1 : 0));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < f && rank < f; ++c) {
    std::size_t piv = rank;
    while (piv < f && a[piv][c] == 0) ++piv;
    if (piv == f) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = 0; i < f; ++i)
      if (i != rank && a[i][c] != 0) {
        const Rat q = a[i][c] / a[rank][c];
        for (std::size_t j = 0; j < f; ++j) a[i][j] -= q * a[rank][j];
      }
    ++rank;
  }
  const std::size_t free_fixed = f - rank;
  Int torsion_fixed = 0;
  std::vector<Int> t(n - f, Int(0));
  for (;;) {
    std::vector<Int> v(f, Int(0));
    v.insert(v.end(), t.begin(), t.end());
    if (p.reduce(sig.apply(v)) == p.reduce(v)) ++torsion_fixed;
    std::size_t i = 0;
    while (i < t.size() && t[i] == p.torsion()[i] - 1) t[i++] = 0;
    if (i == t.size()) break;
    ++t[i];
  }
  Int main_torsion = 1;
  for (const Int& x : fix.group.torsion()) main_torsion *= x;
  const bool ok = fix.group.free_rank() == free_fixed && main_torsion == torsion_fixed;
  r.check(ok, d->name() + " pi1_I^sigma", fix.group.describe(),
          "free " + std::to_string(free_fixed) + ", torsion order " + torsion_fixed.str());
  return r;
}

/// subgroup_finite against explicit closure, for every subset of S.
inline Report suite_finite(const DatumPtr& d) {
  Report r;
  const int n = static_cast<int>(d->generators().size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> K;
    for (int s = 0; s < n; ++s)
      if (mask & (1 << s)) K.push_back(s);
    const bool main = subgroup_finite(*d, K), ref = subgroup_finite_by_closure(d, K);
    r.check(main == ref, d->name() + " K={" + join(K) + "}", main ? "finite" : "infinite", ref ? "finite" : "infinite");
  }
  return r;
}

/// Equal (κ, ν̄) on straight elements of adm(μ) against σ-conjugacy by orbit closure.
inline Report suite_sigma(const DatumPtr& d, const std::vector<CoWeight>& mus, int max_len = 4) {
  Report r;
  const auto extra = omega_conjugators(d);
  for (const auto& mu : mus) {
    if (length(translation(d, mu)) > max_len) continue;
    const auto S = straight_elements(adm(d, mu));
    for (const auto& x : S) {
      const std::set<IwElement> orbit = orbit_closure(x, max_len, extra);
      for (const auto& y : S) {
        const bool main = invariants(x) == invariants(y), ref = orbit.count(y) > 0;
        r.check(main == ref, describe(x) + " ~ " + describe(y), main ? "same class" : "different",
                ref ? "same class" : "different");
      }
    }
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"length", "bruhat", "adm", "dominance", "smith", "finite", "sigma"};
  return n;
}

inline Report run_suite(const std::string& name, const DatumPtr& d) {
  if (name == "length") return suite_length(d);
  if (name == "bruhat") return suite_bruhat(d);
  if (name == "adm") return suite_adm(d, dominant_matrix(*d, 1));
  if (name == "dominance") return suite_dominance(d, dominant_matrix(*d));
  if (name == "smith") return suite_smith(d);
  if (name == "finite") return suite_finite(d);
  if (name == "sigma") return suite_sigma(d, dominant_matrix(*d, 1));
  throw Error("USAGE", "unknown suite '" + name + "' (expected one of " + join(suite_names(), ", ") + ")");
}

}  // namespace iwk::oracle
