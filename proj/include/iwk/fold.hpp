// Folding a twisted datum to the échelonnage system of W_a^σ, with a
// count check of W_a^σ against the affine Weyl group of the folded system.
#pragma once

#include "iwk/iwahori_weyl.hpp"

namespace iwk {

struct EchelonnageSystem {
  std::string type;                              // e.g. "C2", "A1", "G2"
  std::vector<std::vector<Rat>> simple_roots;    // covectors on the free part of Λ
  std::vector<CoWeight> simple_coroots;
  std::vector<std::vector<int>> orbits;          // σ-orbits of the datum's simple roots
  IntMatrix cartan;
  std::vector<CoWeight> positive_coroots;
  std::size_t weyl_order = 0;
  std::vector<std::size_t> growth;               // W_a^σ by generator-word length
};

/// Longest element of the finite parabolic W_O, built by ascending steps.
inline IwElement longest_in(const DatumPtr& d, const std::vector<int>& O) {
  IwElement w = identity(d);
  for (bool grew = true; grew;) {
    grew = false;
    for (int s : O)
      if (!is_right_descent(w, s)) {
        w = right_mul_gen(w, s);
        grew = true;
      }
  }
  return w;
}

/// Growth series (element counts per word length, up to `depth`) of the group
/// generated by the given elements.
inline std::vector<std::size_t> growth_series(const std::vector<IwElement>& gens, const IwElement& e,
                                              int depth) {
  std::set<IwElement> seen{e};
  std::vector<IwElement> frontier{e};
  std::vector<std::size_t> out{1};
  for (int k = 1; k <= depth; ++k) {
    std::vector<IwElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IwElement y = mul(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    out.push_back(next.size());
    frontier = std::move(next);
  }
  return out;
}

/// Simply connected datum with the given Cartan matrix.
inline DatumPtr simply_connected(const IntMatrix& C) {
  DatumSpec s;
  s.name = "sc";
  const std::size_t r = C.rows();
  s.free_rank = r;
  for (std::size_t i = 0; i < r; ++i) {
    s.cartan.push_back(C.row(i));
    s.root_pairing.push_back(C.row(i));
    std::vector<Int> e(r, Int(0));
    e[i] = 1;
    s.simple_coroots.push_back(e);
  }
  return RootDatum::build(s);
}

inline constexpr int kFoldCheckDepth = 8;

inline EchelonnageSystem fold(const DatumPtr& dp) {
  const RootDatum& d = *dp;
  const std::size_t r = d.rank(), f = d.free_rank();
  EchelonnageSystem out;
  std::vector<bool> done(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    if (done[i]) continue;
    std::vector<int> O;
    for (int j = static_cast<int>(i); !done[j]; j = d.twist_perm()[j]) {
      done[j] = true;
      O.push_back(j);
    }
    std::sort(O.begin(), O.end());
    out.orbits.push_back(O);
  }
  for (const auto& O : out.orbits) {
    bool orthogonal = true;
    int edges = 0;
    for (int a : O)
      for (int b : O)
        if (a < b && d.cartan()(a, b) != 0) {
          orthogonal = false;
          ++edges;
        }
    std::vector<Rat> beta(f);
    std::vector<Int> gamma(d.dim(), Int(0));
    for (int a : O) {
      for (std::size_t k = 0; k < f; ++k) beta[k] += Rat(d.root_pairing()[a][k]);
      for (std::size_t k = 0; k < d.dim(); ++k) gamma[k] += d.simple_coroots()[a].coords[k];
    }
    if (orthogonal) {
      for (Rat& b : beta) b /= static_cast<int>(O.size());
    } else if (!(O.size() == 2 && edges == 1 && d.cartan()(O[0], O[1]) == -1)) {
      throw Error("UNSUPPORTED_FOLDING", "σ-orbit {" + join(O) + "} is neither orthogonal nor of type A2");
    }
    out.simple_roots.push_back(beta);
    out.simple_coroots.push_back(d.reduce(gamma));
  }
  const std::size_t m = out.orbits.size();
  out.cartan = IntMatrix(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Rat v = 0;
      for (std::size_t k = 0; k < f; ++k) v += out.simple_roots[a][k] * Rat(out.simple_coroots[b].coords[k]);
      if (!is_integral(v)) throw Error("UNSUPPORTED_FOLDING", "folded pairing is not integral");
      out.cartan(a, b) = rat_numerator(v);
    }
  const DatumPtr aux = simply_connected(out.cartan);
  std::vector<std::string> types = aux->component_types();
  out.type = join(types, "+");
  out.weyl_order = aux->weyl_order();
  for (std::size_t k = 0; k < aux->positive_count(); ++k) {
    std::vector<Int> v(d.dim(), Int(0));
    const auto& cc = aux->roots()[k].coroot_coeffs;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < d.dim(); ++t) v[t] += out.simple_coroots[j].coords[t] * cc[j];
    out.positive_coroots.push_back(d.reduce(v));
  }

  // count check: W_a^σ generated by longest elements of σ-orbits on S
  std::vector<IwElement> fixed_gens;
  std::vector<bool> seen(d.generators().size(), false);
  for (std::size_t s = 0; s < d.generators().size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> O;
    for (int t = static_cast<int>(s); !seen[t]; t = d.sigma_generator(t)) {
      seen[t] = true;
      O.push_back(t);
    }
    fixed_gens.push_back(longest_in(dp, O));
  }
  std::vector<IwElement> aux_gens;
  for (std::size_t s = 0; s < aux->generators().size(); ++s) aux_gens.push_back(generator(aux, static_cast<int>(s)));
  out.growth = growth_series(fixed_gens, identity(dp), kFoldCheckDepth);
  if (growth_series(aux_gens, identity(aux), kFoldCheckDepth) != out.growth || fixed_gens.size() != aux_gens.size())
    throw Error("UNSUPPORTED_FOLDING", "W_a^σ does not match the affine Weyl group of the folded system");
  return out;
}

}  // namespace iwk
