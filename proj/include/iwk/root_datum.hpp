// Based root data over the coinvariant coweight lattice Λ, with a diagram
// twist (Frobenius), the finite Weyl group W₀ as an explicit table, and the
// dominance machinery on integral and rational coweights.
#pragma once

#include "iwk/abelian.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace iwk {

/// Element of Λ = X_*(T)_I in canonical (free, torsion) coordinates.
struct CoWeight {
  std::vector<Int> coords;

  bool operator==(const CoWeight& o) const { return coords == o.coords; }
  bool operator!=(const CoWeight& o) const { return coords != o.coords; }
  bool operator<(const CoWeight& o) const { return coords < o.coords; }
};

/// Rational vector on the free part of Λ.
struct RatCoWeight {
  std::vector<Rat> coords;

  bool operator==(const RatCoWeight& o) const { return coords == o.coords; }
  bool operator!=(const RatCoWeight& o) const { return coords != o.coords; }
  bool operator<(const RatCoWeight& o) const { return coords < o.coords; }
};

inline std::string to_string(const CoWeight& c) { return "(" + join(c.coords) + ")"; }
inline std::string to_string(const RatCoWeight& c) { return "(" + join(c.coords) + ")"; }

struct Root {
  std::vector<int> coeffs;         // in the simple roots
  std::vector<int> coroot_coeffs;  // in the simple coroots
  std::vector<Int> covector;       // pairing on the free part of Λ
  CoWeight coroot;
  bool positive = true;
  int component = 0;
  int height = 0;
};

struct WeylElement {
  IntMatrix mat;           // action on canonical coordinates of Λ
  std::vector<int> word;   // lexicographically least reduced word
  std::vector<int> root_perm;
  int inverse = 0;
  int sigma = 0;
  std::vector<int> rmul;   // w·s_j
  std::vector<int> lmul;   // s_j·w
};

/// Generator of the affine Weyl group: a simple affine reflection.
struct AffineGen {
  int index = 0;
  int component = 0;
  bool affine = false;
  int simple_root = -1;  // finite generators only
  CoWeight trans;
  int fin = 0;
};

struct EchelonnageOverride {
  std::vector<std::vector<Int>> simple_roots;    // covectors on the free part
  std::vector<std::vector<Int>> simple_coroots;  // elements of Λ
};

/// Parsed datum description (preset name or explicit data).
struct DatumSpec {
  std::optional<std::string> preset;
  std::string name = "custom";
  std::vector<std::vector<Int>> cartan;
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  std::vector<std::vector<Int>> simple_coroots;
  std::vector<std::vector<Int>> root_pairing;
  std::optional<std::vector<int>> twist_perm;
  std::optional<std::vector<std::vector<Int>>> twist_endo;
  std::optional<EchelonnageOverride> echelonnage_override;

  static DatumSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

namespace detail {

inline Int json_int(const nlohmann::json& v, const std::string& path) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const bool ok = !s.empty() &&
                    s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                    s != "-";
    if (ok) return Int(s);
  }
  throw Error("DATUM_ERROR", path + ": expected an integer");
}

inline std::vector<Int> json_int_vec(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array()) throw Error("DATUM_ERROR", path + ": expected an array of integers");
  std::vector<Int> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(json_int(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<Int>> json_int_mat(const nlohmann::json& v,
                                                  const std::string& path) {
  if (!v.is_array()) throw Error("DATUM_ERROR", path + ": expected an array of arrays");
  std::vector<std::vector<Int>> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(json_int_vec(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline nlohmann::json int_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

inline nlohmann::json int_vec_json(const std::vector<Int>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& x : v) a.push_back(int_json(x));
  return a;
}

inline nlohmann::json int_mat_json(const std::vector<std::vector<Int>>& m) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : m) a.push_back(int_vec_json(r));
  return a;
}

}  // namespace detail

inline DatumSpec DatumSpec::from_json(const nlohmann::json& j) {
  using detail::json_int_mat;
  using detail::json_int_vec;
  if (!j.is_object()) throw Error("DATUM_ERROR", "datum spec must be a JSON object");
  static const std::set<std::string> known = {"preset",         "name",  "cartan",
                                              "lattice",        "simple_coroots",
                                              "root_pairing",   "twist", "echelonnage_override"};
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) throw Error("DATUM_ERROR", k + ": unknown field");
  DatumSpec s;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw Error("DATUM_ERROR", "preset: expected a string");
    s.preset = j["preset"].get<std::string>();
    if (j.size() != 1) throw Error("DATUM_ERROR", "preset: no other fields allowed");
    return s;
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error("DATUM_ERROR", "name: expected a string");
    s.name = j["name"].get<std::string>();
  }
  for (const char* field : {"cartan", "lattice", "simple_coroots", "root_pairing"})
    if (!j.contains(field)) throw Error("DATUM_ERROR", std::string(field) + ": missing");
  s.cartan = json_int_mat(j["cartan"], "cartan");
  const auto& lat = j["lattice"];
  if (!lat.is_object() || !lat.contains("free_rank"))
    throw Error("DATUM_ERROR", "lattice.free_rank: missing");
  const Int fr = detail::json_int(lat["free_rank"], "lattice.free_rank");
  if (fr < 0 || fr > 64) throw Error("DATUM_ERROR", "lattice.free_rank: out of range");
  s.free_rank = fr.convert_to<std::size_t>();
  if (lat.contains("torsion")) s.torsion = json_int_vec(lat["torsion"], "lattice.torsion");
  s.simple_coroots = json_int_mat(j["simple_coroots"], "simple_coroots");
  s.root_pairing = json_int_mat(j["root_pairing"], "root_pairing");
  if (j.contains("twist")) {
    const auto& t = j["twist"];
    if (!t.is_object()) throw Error("DATUM_ERROR", "twist: expected an object");
    if (!t.contains("perm") || !t["perm"].is_array())
      throw Error("DATUM_ERROR", "twist.perm: missing");
    std::vector<int> perm;
    for (std::size_t i = 0; i < t["perm"].size(); ++i) {
      if (!t["perm"][i].is_number_integer())
        throw Error("DATUM_ERROR", "twist.perm[" + std::to_string(i) + "]: expected an integer");
      perm.push_back(t["perm"][i].get<int>());
    }
    s.twist_perm = perm;
    if (!t.contains("lattice_endo")) throw Error("DATUM_ERROR", "twist.lattice_endo: missing");
    s.twist_endo = json_int_mat(t["lattice_endo"], "twist.lattice_endo");
  }
  if (j.contains("echelonnage_override")) {
    const auto& o = j["echelonnage_override"];
    if (!o.is_object() || !o.contains("simple_roots") || !o.contains("simple_coroots"))
      throw Error("DATUM_ERROR", "echelonnage_override: needs simple_roots and simple_coroots");
    s.echelonnage_override = EchelonnageOverride{
        json_int_mat(o["simple_roots"], "echelonnage_override.simple_roots"),
        json_int_mat(o["simple_coroots"], "echelonnage_override.simple_coroots")};
  }
  return s;
}

inline nlohmann::json DatumSpec::to_json() const {
  using detail::int_mat_json;
  using detail::int_vec_json;
  if (preset) return nlohmann::json{{"preset", *preset}};
  nlohmann::json j;
  j["name"] = name;
  j["cartan"] = int_mat_json(cartan);
  j["lattice"] = {{"free_rank", free_rank}, {"torsion", int_vec_json(torsion)}};
  j["simple_coroots"] = int_mat_json(simple_coroots);
  j["root_pairing"] = int_mat_json(root_pairing);
  if (twist_perm) j["twist"] = {{"perm", *twist_perm}, {"lattice_endo", int_mat_json(*twist_endo)}};
  if (echelonnage_override)
    j["echelonnage_override"] = {{"simple_roots", int_mat_json(echelonnage_override->simple_roots)},
                                 {"simple_coroots", int_mat_json(echelonnage_override->simple_coroots)}};
  return j;
}

/// Enumerates the roots of a finite-type Cartan matrix (C_ij = ⟨α_i, α_j^∨⟩)
/// in simple-root and simple-coroot coordinates. Positive roots come first,
/// sorted by height; root k + P is the negative of root k.
struct RootCombinatorics {
  std::vector<std::vector<int>> coeffs;
  std::vector<std::vector<int>> coroot_coeffs;
  std::size_t positive_count = 0;
};

inline RootCombinatorics enumerate_roots(const std::vector<std::vector<int>>& C) {
  const std::size_t r = C.size();
  std::map<std::vector<int>, std::vector<int>> found;  // root coeffs -> coroot coeffs
  std::vector<std::vector<int>> queue;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    found[e] = e;
    queue.push_back(e);
  }
  constexpr std::size_t kMaxPositive = 400;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<int> b = queue[q];
    const std::vector<int> c = found[b];
    for (std::size_t j = 0; j < r; ++j) {
      int pair = 0;  // ⟨β, α_j^∨⟩
      for (std::size_t i = 0; i < r; ++i) pair += b[i] * C[i][j];
      int copair = 0;  // ⟨α_j, β^∨⟩
      for (std::size_t i = 0; i < r; ++i) copair += c[i] * C[j][i];
      std::vector<int> nb = b, nc = c;
      nb[j] -= pair;
      nc[j] -= copair;
      bool nonneg = std::all_of(nb.begin(), nb.end(), [](int v) { return v >= 0; });
      bool nonzero = std::any_of(nb.begin(), nb.end(), [](int v) { return v != 0; });
      if (!nonneg || !nonzero || found.count(nb)) continue;
      found[nb] = nc;
      queue.push_back(nb);
      if (found.size() > kMaxPositive)
        throw Error("BAD_CARTAN", "Cartan matrix is not of finite type");
    }
  }
  std::vector<std::vector<int>> pos;
  for (const auto& [b, _] : found) pos.push_back(b);
  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0);
    const int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  RootCombinatorics rc;
  rc.positive_count = pos.size();
  for (const auto& b : pos) {
    rc.coeffs.push_back(b);
    rc.coroot_coeffs.push_back(found[b]);
  }
  for (std::size_t k = 0; k < pos.size(); ++k) {
    std::vector<int> nb = rc.coeffs[k], nc = rc.coroot_coeffs[k];
    for (int& v : nb) v = -v;
    for (int& v : nc) v = -v;
    rc.coeffs.push_back(nb);
    rc.coroot_coeffs.push_back(nc);
  }
  return rc;
}

/// Checks the axioms of a generalized Cartan matrix of finite type.
inline void validate_cartan(const std::vector<std::vector<int>>& C, const std::string& path) {
  const std::size_t r = C.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (C[i].size() != r) throw Error("BAD_CARTAN", path + "[" + std::to_string(i) + "]: not square");
    for (std::size_t j = 0; j < r; ++j) {
      const std::string at = path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (i == j && C[i][j] != 2) throw Error("BAD_CARTAN", at + ": diagonal entries must be 2");
      if (i != j && C[i][j] > 0) throw Error("BAD_CARTAN", at + ": off-diagonal entries must be <= 0");
    }
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const std::string at = path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if ((C[i][j] == 0) != (C[j][i] == 0))
        throw Error("BAD_CARTAN", at + ": zero pattern must be symmetric");
      if (C[i][j] * C[j][i] > 3) throw Error("BAD_CARTAN", at + ": not of finite type");
    }
  enumerate_roots(C);
}

/// Dynkin type name ("A2", "C2", "D4", ...) of a connected finite-type Cartan matrix.
inline std::string classify_connected(const std::vector<std::vector<int>>& C) {
  const int n = static_cast<int>(C.size());
  if (n == 0) return "";
  if (n == 1) return "A1";
  std::vector<std::vector<int>> adj(n);
  int triple = 0, dbl = 0, du = -1, dv = -1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || C[i][j] == 0) continue;
      adj[i].push_back(j);
      if (i < j) {
        const int m = C[i][j] * C[j][i];
        if (m == 3) ++triple;
        if (m == 2) {
          ++dbl;
          du = i;
          dv = j;
        }
      }
    }
  const std::string N = std::to_string(n);
  if (triple) return "G2";
  if (dbl) {
    if (n == 2) return "C2";
    // end node of the double edge decides B versus C
    int end = adj[du].size() == 1 ? du : (adj[dv].size() == 1 ? dv : -1);
    if (end < 0) return "F4";
    const int other = end == du ? dv : du;
    // the long root α satisfies ⟨α, β^∨⟩ = -2 against the short β
    return C[end][other] == -2 ? "C" + N : "B" + N;
  }
  int branch = -1;
  for (int i = 0; i < n; ++i)
    if (adj[i].size() == 3) branch = i;
  if (branch < 0) return "A" + N;
  std::vector<int> arms;
  for (int start : adj[branch]) {
    int prev = branch, cur = start, len = 1;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + N;
  if (arms == std::vector<int>{1, 2, 2}) return "E6";
  if (arms == std::vector<int>{1, 2, 3}) return "E7";
  if (arms == std::vector<int>{1, 2, 4}) return "E8";
  return "?" + N;
}

class RootDatum;
using DatumPtr = std::shared_ptr<const RootDatum>;

/// Based root datum over Λ with Frobenius twist σ. The reduced root system Σ
/// stored here (the datum's own system, or the échelonnage override when one
/// is given) governs W₀, the affine Weyl group, lengths and dominance.
class RootDatum : public std::enable_shared_from_this<RootDatum> {
 public:
  static constexpr std::size_t kMaxWeylOrder = 50000;

  static DatumPtr build(const DatumSpec& spec);

  /// Sub-datum of the Levi attached to a σ-stable subset J of simple roots.
  DatumPtr levi(const std::vector<int>& J) const;

  const std::string& name() const noexcept { return name_; }
  const FgAbelian& lattice() const noexcept { return lattice_; }
  std::size_t free_rank() const noexcept { return lattice_.free_rank(); }
  std::size_t dim() const noexcept { return lattice_.dim(); }
  std::size_t rank() const noexcept { return simple_coroots_.size(); }
  const IntMatrix& cartan() const noexcept { return cartan_; }
  const IntMatrix& absolute_cartan() const noexcept { return abs_cartan_; }
  const std::vector<CoWeight>& simple_coroots() const noexcept { return simple_coroots_; }
  const std::vector<std::vector<Int>>& root_pairing() const noexcept { return pairing_; }
  const std::vector<int>& twist_perm() const noexcept { return perm_; }
  const IntMatrix& twist_endo() const noexcept { return endo_; }
  int sigma_order() const noexcept { return sigma_order_; }
  bool twist_trivial() const noexcept { return endo_ == IntMatrix::identity(dim()); }
  const std::vector<std::vector<int>>& components() const noexcept { return components_; }
  int component_of(int simple) const { return component_of_.at(simple); }
  /// Parent simple-root index of each simple root (identity unless a Levi).
  const std::vector<int>& parent_simple() const noexcept { return parent_simple_; }
  const DatumSpec& spec() const noexcept { return spec_; }

  // roots of Σ
  const std::vector<Root>& roots() const noexcept { return roots_; }
  std::size_t positive_count() const noexcept { return positive_count_; }
  int negative_of(int k) const {
    const int P = static_cast<int>(positive_count_);
    return k < P ? k + P : k - P;
  }
  int highest_root(int component) const { return highest_root_.at(component); }
  int sigma_root(int k) const { return sigma_root_.at(k); }
  int find_root(const std::vector<int>& coeffs) const {
    auto it = root_index_.find(coeffs);
    return it == root_index_.end() ? -1 : it->second;
  }
  /// Sum of the positive roots, as a covector on the free part.
  const std::vector<Int>& two_rho() const noexcept { return two_rho_; }

  // finite Weyl group
  std::size_t weyl_order() const noexcept { return weyl_.size(); }
  const WeylElement& weyl(int w) const { return weyl_.at(w); }
  int weyl_identity() const noexcept { return 0; }
  int weyl_simple(int i) const { return weyl_[0].rmul.at(i); }
  int weyl_mul(int a, int b) const {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * weyl_.size() + b];
    int x = a;
    for (int j : weyl_[b].word) x = weyl_[x].rmul[j];
    return x;
  }
  int weyl_length(int w) const { return static_cast<int>(weyl_[w].word.size()); }
  int weyl_from_word(const std::vector<int>& word) const {
    int x = 0;
    for (int j : word) {
      if (j < 0 || j >= static_cast<int>(rank()))
        throw Error("BAD_ELEMENT", "finite word letter " + std::to_string(j) + " out of range");
      x = weyl_[x].rmul[j];
    }
    return x;
  }
  int reflection(int root) const { return reflection_.at(root); }
  /// True when w⁻¹ maps root k to a positive root.
  bool inv_maps_positive(int w, int k) const {
    return weyl_[weyl_[w].inverse].root_perm[k] < static_cast<int>(positive_count_);
  }
  bool maps_positive(int w, int k) const {
    return weyl_[w].root_perm[k] < static_cast<int>(positive_count_);
  }

  CoWeight act(int w, const CoWeight& l) const {
    return CoWeight{lattice_.reduce(weyl_[w].mat.apply(l.coords))};
  }
  RatCoWeight act(int w, const RatCoWeight& l) const {
    const std::size_t f = free_rank();
    RatCoWeight out{std::vector<Rat>(f)};
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j)
        if (!weyl_[w].mat(i, j).is_zero()) out.coords[i] += Rat(weyl_[w].mat(i, j)) * l.coords[j];
    return out;
  }

  // affine generators S, grouped by component: [affine, finite...]
  const std::vector<AffineGen>& generators() const noexcept { return gens_; }
  int generator_of_simple(int i) const { return gen_of_simple_.at(i); }
  int affine_generator(int component) const { return affine_gen_.at(component); }
  int sigma_generator(int s) const { return sigma_gen_.at(s); }
  int sigma_component(int c) const { return sigma_comp_.at(c); }

  // lattice helpers
  CoWeight zero() const { return CoWeight{lattice_.zero()}; }
  CoWeight reduce(std::vector<Int> v) const { return CoWeight{lattice_.reduce(std::move(v))}; }
  CoWeight add(const CoWeight& a, const CoWeight& b) const {
    return CoWeight{lattice_.add(a.coords, b.coords)};
  }
  CoWeight sub(const CoWeight& a, const CoWeight& b) const {
    return CoWeight{lattice_.add(a.coords, lattice_.negate(b.coords))};
  }
  CoWeight neg(const CoWeight& a) const { return CoWeight{lattice_.negate(a.coords)}; }
  CoWeight scale(const CoWeight& a, const Int& k) const {
    std::vector<Int> v = a.coords;
    for (Int& x : v) x *= k;
    return reduce(std::move(v));
  }
  CoWeight sigma(const CoWeight& a) const { return CoWeight{lattice_.reduce(endo_.apply(a.coords))}; }
  RatCoWeight sigma(const RatCoWeight& a) const {
    const std::size_t f = free_rank();
    RatCoWeight out{std::vector<Rat>(f)};
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j)
        if (!endo_(i, j).is_zero()) out.coords[i] += Rat(endo_(i, j)) * a.coords[j];
    return out;
  }
  RatCoWeight rational(const CoWeight& a) const {
    RatCoWeight r;
    for (std::size_t i = 0; i < free_rank(); ++i) r.coords.emplace_back(a.coords[i]);
    return r;
  }
  /// ⟨covector, λ⟩ on the free part.
  Int pair(const std::vector<Int>& covector, const CoWeight& l) const {
    Int acc = 0;
    for (std::size_t i = 0; i < covector.size(); ++i)
      if (!covector[i].is_zero()) acc += covector[i] * l.coords[i];
    return acc;
  }
  Rat pair(const std::vector<Int>& covector, const RatCoWeight& l) const {
    Rat acc = 0;
    for (std::size_t i = 0; i < covector.size(); ++i)
      if (!covector[i].is_zero()) acc += Rat(covector[i]) * l.coords[i];
    return acc;
  }
  /// ⟨α_i, λ⟩ for every simple root.
  std::vector<Int> simple_pairings(const CoWeight& l) const {
    std::vector<Int> p(rank());
    for (std::size_t i = 0; i < rank(); ++i) p[i] = pair(pairing_[i], l);
    return p;
  }
  /// ⟨β, λ⟩ for a root of Σ, given the simple pairings of λ.
  Int root_pairing_from_simple(int k, const std::vector<Int>& simple) const {
    Int acc = 0;
    const auto& b = roots_[k].coeffs;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i]) acc += simple[i] * b[i];
    return acc;
  }

  /// π₁(G)_I = Λ / Q^∨(Σ) with its projection from canonical Λ coordinates.
  const FgAbelian& pi1() const noexcept { return pi1_; }
  /// σ-coinvariants π₁(G)_Γ = Λ / (Q^∨(Σ) + (1 − σ)Λ).
  const FgAbelian& pi1_coinvariants() const noexcept { return pi1_gamma_; }
  /// σ acting on canonical coordinates of π₁(G)_I.
  const IntMatrix& pi1_sigma() const noexcept { return pi1_sigma_; }

  std::vector<Int> pi1_class(const CoWeight& l) const { return pi1_.project(pi1_presentation(l)); }
  std::vector<Int> kottwitz_class(const CoWeight& l) const {
    return pi1_gamma_.project(pi1_presentation(l));
  }

  /// Dynkin type of each component of Σ.
  std::vector<std::string> component_types() const;

 private:
  RootDatum() = default;
  static DatumPtr assemble(DatumSpec spec, std::string name, FgAbelian lattice, IntMatrix abs_cartan,
                           std::vector<std::vector<int>> cartan, std::vector<CoWeight> coroots,
                           std::vector<std::vector<Int>> pairing, std::vector<int> perm,
                           IntMatrix endo, std::vector<int> parent_simple);
  void enumerate_weyl();
  void build_generators();

  // presentation of Λ used for π₁ quotients: canonical coordinates + torsion relations
  std::vector<Int> pi1_presentation(const CoWeight& l) const { return l.coords; }

  DatumSpec spec_;
  std::string name_;
  FgAbelian lattice_;
  IntMatrix abs_cartan_;
  IntMatrix cartan_;
  std::vector<std::vector<int>> cartan_int_;
  std::vector<CoWeight> simple_coroots_;
  std::vector<std::vector<Int>> pairing_;
  std::vector<int> perm_;
  IntMatrix endo_;
  int sigma_order_ = 1;
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_;
  std::vector<int> parent_simple_;

  std::vector<Root> roots_;
  std::size_t positive_count_ = 0;
  std::map<std::vector<int>, int> root_index_;
  std::vector<int> highest_root_;
  std::vector<int> sigma_root_;
  std::vector<Int> two_rho_;

  std::vector<WeylElement> weyl_;
  std::vector<int> mul_table_;
  std::vector<int> reflection_;

  std::vector<AffineGen> gens_;
  std::vector<int> gen_of_simple_;
  std::vector<int> affine_gen_;
  std::vector<int> sigma_gen_;
  std::vector<int> sigma_comp_;

  FgAbelian pi1_;
  FgAbelian pi1_gamma_;
  IntMatrix pi1_sigma_;
};

namespace detail {

inline std::vector<std::vector<int>> small_matrix(const std::vector<std::vector<Int>>& m,
                                                  const std::string& path) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<int> row;
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] < -8 || m[i][j] > 8)
        throw Error("BAD_CARTAN", path + "[" + std::to_string(i) + "][" + std::to_string(j) +
                                      "]: entry out of range");
      row.push_back(m[i][j].convert_to<int>());
    }
    out.push_back(row);
  }
  return out;
}

inline std::vector<std::vector<int>> cartan_components(const std::vector<std::vector<int>>& C) {
  const std::size_t r = C.size();
  std::vector<int> comp(r, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < r; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{static_cast<int>(s)};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t q = 0; q < members.size(); ++q)
      for (std::size_t j = 0; j < r; ++j)
        if (comp[j] < 0 && C[members[q]][j] != 0) {
          comp[j] = static_cast<int>(out.size());
          members.push_back(static_cast<int>(j));
        }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> RootDatum::component_types() const {
  std::vector<std::string> out;
  for (const auto& comp : components_) {
    std::vector<std::vector<int>> sub;
    for (int i : comp) {
      std::vector<int> row;
      for (int j : comp) row.push_back(cartan_int_[i][j]);
      sub.push_back(row);
    }
    out.push_back(classify_connected(sub));
  }
  return out;
}

inline DatumPtr RootDatum::build(const DatumSpec& spec) {
  if (spec.preset) throw Error("DATUM_ERROR", "preset specs must be resolved before building");
  const std::size_t r = spec.cartan.size();
  const auto C = detail::small_matrix(spec.cartan, "cartan");
  validate_cartan(C, "cartan");

  for (std::size_t j = 0; j < spec.torsion.size(); ++j)
    if (spec.torsion[j] < 2 || (j > 0 && !(spec.torsion[j] % spec.torsion[j - 1]).is_zero()))
      throw Error("DATUM_ERROR", "lattice.torsion[" + std::to_string(j) +
                                     "]: orders must be >= 2 and divide successively");
  FgAbelian lattice = FgAbelian::canonical(spec.free_rank, spec.torsion);
  const std::size_t n = lattice.dim(), f = lattice.free_rank();

  auto read_coweights = [&](const std::vector<std::vector<Int>>& rows, const std::string& path) {
    std::vector<CoWeight> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != n)
        throw Error("DATUM_ERROR", path + "[" + std::to_string(i) + "]: expected " +
                                       std::to_string(n) + " coordinates");
      out.push_back(CoWeight{lattice.reduce(rows[i])});
    }
    return out;
  };
  auto read_covectors = [&](const std::vector<std::vector<Int>>& rows, const std::string& path) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].size() != f)
        throw Error("DATUM_ERROR", path + "[" + std::to_string(i) + "]: expected " +
                                       std::to_string(f) + " free coordinates");
    return rows;
  };

  if (spec.simple_coroots.size() != r)
    throw Error("DATUM_ERROR", "simple_coroots: expected one coroot per Cartan row");
  if (spec.root_pairing.size() != r)
    throw Error("DATUM_ERROR", "root_pairing: expected one covector per Cartan row");
  const auto abs_coroots = read_coweights(spec.simple_coroots, "simple_coroots");
  const auto abs_pairing = read_covectors(spec.root_pairing, "root_pairing");

  auto pair_free = [&](const std::vector<Int>& cov, const CoWeight& l) {
    Int acc = 0;
    for (std::size_t k = 0; k < f; ++k) acc += cov[k] * l.coords[k];
    return acc;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (pair_free(abs_pairing[i], abs_coroots[j]) != C[i][j])
        throw Error("BAD_PAIRING", "root_pairing[" + std::to_string(i) + "] against simple_coroots[" +
                                       std::to_string(j) + "] gives " +
                                       pair_free(abs_pairing[i], abs_coroots[j]).str() +
                                       ", Cartan entry is " + std::to_string(C[i][j]));

  // twist
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  IntMatrix endo = IntMatrix::identity(n);
  if (spec.twist_perm) {
    perm = *spec.twist_perm;
    if (perm.size() != r) throw Error("BAD_TWIST", "twist.perm: expected " + std::to_string(r) + " entries");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < r; ++i)
      if (sorted[i] != static_cast<int>(i)) throw Error("BAD_TWIST", "twist.perm: not a permutation");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (C[perm[i]][perm[j]] != C[i][j])
          throw Error("BAD_TWIST", "twist.perm: does not preserve the Cartan matrix at [" +
                                       std::to_string(i) + "][" + std::to_string(j) + "]");
    const auto& rows = *spec.twist_endo;
    if (rows.size() != n) throw Error("BAD_TWIST", "twist.lattice_endo: expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i].size() != n)
        throw Error("BAD_TWIST", "twist.lattice_endo[" + std::to_string(i) + "]: expected " +
                                     std::to_string(n) + " entries");
    endo = IntMatrix::from_rows(rows);
    if (!endo_well_defined(lattice, endo))
      throw Error("BAD_TWIST", "twist.lattice_endo: does not preserve the torsion relations");
    for (std::size_t i = 0; i < r; ++i) {
      if (CoWeight{lattice.reduce(endo.apply(abs_coroots[i].coords))} != abs_coroots[perm[i]])
        throw Error("BAD_TWIST", "twist.lattice_endo: does not send simple_coroots[" + std::to_string(i) +
                                     "] to simple_coroots[" + std::to_string(perm[i]) + "]");
      for (std::size_t k = 0; k < f; ++k) {
        Int acc = 0;
        for (std::size_t m = 0; m < f; ++m) acc += abs_pairing[perm[i]][m] * endo(m, k);
        if (acc != abs_pairing[i][k])
          throw Error("BAD_TWIST", "twist.lattice_endo: root_pairing[" + std::to_string(perm[i]) +
                                       "] composed with the twist differs from root_pairing[" +
                                       std::to_string(i) + "]");
      }
    }
  }

  IntMatrix abs_cartan = IntMatrix::from_rows(spec.cartan, r);
  std::vector<std::vector<int>> sys_cartan = C;
  std::vector<CoWeight> coroots = abs_coroots;
  std::vector<std::vector<Int>> pairing = abs_pairing;
  std::vector<int> sys_perm = perm;
  if (spec.echelonnage_override) {
    const auto& o = *spec.echelonnage_override;
    if (o.simple_roots.size() != o.simple_coroots.size())
      throw Error("BAD_CARTAN", "echelonnage_override: roots and coroots differ in number");
    coroots = read_coweights(o.simple_coroots, "echelonnage_override.simple_coroots");
    pairing = read_covectors(o.simple_roots, "echelonnage_override.simple_roots");
    const std::size_t rr = coroots.size();
    sys_cartan.assign(rr, std::vector<int>(rr));
    for (std::size_t i = 0; i < rr; ++i)
      for (std::size_t j = 0; j < rr; ++j) {
        const Int v = pair_free(pairing[i], coroots[j]);
        if (v < -8 || v > 8) throw Error("BAD_CARTAN", "echelonnage_override: pairing out of range");
        sys_cartan[i][j] = v.convert_to<int>();
      }
    validate_cartan(sys_cartan, "echelonnage_override");
    sys_perm.assign(rr, -1);
    for (std::size_t i = 0; i < rr; ++i) {
      const CoWeight img{lattice.reduce(endo.apply(coroots[i].coords))};
      for (std::size_t j = 0; j < rr; ++j)
        if (coroots[j] == img) sys_perm[i] = static_cast<int>(j);
      if (sys_perm[i] < 0)
        throw Error("BAD_TWIST", "twist does not permute echelonnage_override.simple_coroots");
    }
  }
  std::vector<int> parent(sys_cartan.size());
  std::iota(parent.begin(), parent.end(), 0);
  return assemble(spec, spec.name, lattice, abs_cartan, sys_cartan, coroots, pairing, sys_perm, endo,
                  parent);
}

inline DatumPtr RootDatum::levi(const std::vector<int>& J) const {
  std::vector<int> js = J;
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  for (int j : js) {
    if (j < 0 || j >= static_cast<int>(rank())) throw Error("BAD_LEVI", "simple root index out of range");
    if (!std::binary_search(js.begin(), js.end(), perm_[j]))
      throw Error("BAD_LEVI", "subset of simple roots is not σ-stable");
  }
  std::vector<std::vector<int>> C;
  std::vector<CoWeight> coroots;
  std::vector<std::vector<Int>> pairing;
  std::vector<int> perm, parent;
  for (int i : js) {
    std::vector<int> row;
    for (int j : js) row.push_back(cartan_int_[i][j]);
    C.push_back(row);
    coroots.push_back(simple_coroots_[i]);
    pairing.push_back(pairing_[i]);
    perm.push_back(static_cast<int>(std::lower_bound(js.begin(), js.end(), perm_[i]) - js.begin()));
    parent.push_back(parent_simple_[i]);
  }
  std::string name = name_ + "/M{" + join(js) + "}";
  return assemble(spec_, name, lattice_, abs_cartan_, C, coroots, pairing, perm, endo_, parent);
}

inline DatumPtr RootDatum::assemble(DatumSpec spec, std::string name, FgAbelian lattice,
                                    IntMatrix abs_cartan, std::vector<std::vector<int>> cartan,
                                    std::vector<CoWeight> coroots, std::vector<std::vector<Int>> pairing,
                                    std::vector<int> perm, IntMatrix endo,
                                    std::vector<int> parent_simple) {
  std::shared_ptr<RootDatum> d(new RootDatum());
  d->spec_ = std::move(spec);
  d->name_ = std::move(name);
  d->lattice_ = std::move(lattice);
  d->abs_cartan_ = std::move(abs_cartan);
  const std::size_t r = cartan.size();
  d->cartan_ = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) d->cartan_(i, j) = cartan[i][j];
  d->cartan_int_ = cartan;
  d->simple_coroots_ = std::move(coroots);
  d->pairing_ = std::move(pairing);
  d->perm_ = std::move(perm);
  d->endo_ = std::move(endo);
  d->parent_simple_ = std::move(parent_simple);
  const std::size_t n = d->lattice_.dim(), f = d->lattice_.free_rank();

  // order of σ
  {
    IntMatrix pw = d->endo_;
    int e = 1;
    const IntMatrix id = IntMatrix::identity(n);
    auto reduced = [&](IntMatrix m) {
      for (std::size_t j = 0; j < n; ++j) {
        auto c = d->lattice_.reduce(m.col(j));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
      }
      return m;
    };
    while (reduced(pw) != id) {
      pw = d->endo_ * pw;
      if (++e > 720) throw Error("BAD_TWIST", "twist has infinite or excessive order");
    }
    d->sigma_order_ = e;
  }

  d->components_ = detail::cartan_components(cartan);
  d->component_of_.assign(r, 0);
  for (std::size_t c = 0; c < d->components_.size(); ++c)
    for (int i : d->components_[c]) d->component_of_[i] = static_cast<int>(c);

  // roots
  const RootCombinatorics rc = enumerate_roots(cartan);
  d->positive_count_ = rc.positive_count;
  d->two_rho_.assign(f, Int(0));
  for (std::size_t k = 0; k < rc.coeffs.size(); ++k) {
    Root root;
    root.coeffs = rc.coeffs[k];
    root.coroot_coeffs = rc.coroot_coeffs[k];
    root.covector.assign(f, Int(0));
    std::vector<Int> co(n, Int(0));
    for (std::size_t i = 0; i < r; ++i) {
      if (root.coeffs[i])
        for (std::size_t m = 0; m < f; ++m) root.covector[m] += d->pairing_[i][m] * root.coeffs[i];
      if (root.coroot_coeffs[i])
        for (std::size_t m = 0; m < n; ++m)
          co[m] += d->simple_coroots_[i].coords[m] * root.coroot_coeffs[i];
    }
    root.coroot = CoWeight{d->lattice_.reduce(co)};
    root.positive = k < rc.positive_count;
    root.height = std::accumulate(root.coeffs.begin(), root.coeffs.end(), 0);
    for (std::size_t i = 0; i < r; ++i)
      if (root.coeffs[i]) {
        root.component = d->component_of_[i];
        break;
      }
    if (root.positive)
      for (std::size_t m = 0; m < f; ++m) d->two_rho_[m] += root.covector[m];
    d->root_index_[root.coeffs] = static_cast<int>(k);
    d->roots_.push_back(std::move(root));
  }
  d->highest_root_.assign(d->components_.size(), -1);
  for (std::size_t k = 0; k < d->positive_count_; ++k) {
    const int c = d->roots_[k].component;
    if (d->highest_root_[c] < 0 || d->roots_[k].height > d->roots_[d->highest_root_[c]].height)
      d->highest_root_[c] = static_cast<int>(k);
  }
  d->sigma_root_.resize(d->roots_.size());
  for (std::size_t k = 0; k < d->roots_.size(); ++k) {
    std::vector<int> img(r, 0);
    for (std::size_t i = 0; i < r; ++i) img[d->perm_[i]] = d->roots_[k].coeffs[i];
    d->sigma_root_[k] = d->find_root(img);
  }

  d->enumerate_weyl();
  d->build_generators();

  // π₁ and its σ-coinvariants
  {
    std::vector<std::vector<Int>> rel;
    const std::size_t t = d->lattice_.torsion().size();
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<Int> v(n, Int(0));
      v[f + j] = d->lattice_.torsion()[j];
      rel.push_back(v);
    }
    for (const auto& c : d->simple_coroots_) rel.push_back(c.coords);
    d->pi1_ = FgAbelian::cokernel(n, IntMatrix::from_columns(rel, n));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> v(n, Int(0));
      v[j] = 1;
      std::vector<Int> img = d->endo_.apply(v);
      for (std::size_t i = 0; i < n; ++i) img[i] = v[i] - img[i];
      rel.push_back(img);
    }
    d->pi1_gamma_ = FgAbelian::cokernel(n, IntMatrix::from_columns(rel, n));
    // σ on canonical π₁ coordinates
    const std::size_t m = d->pi1_.dim();
    d->pi1_sigma_ = IntMatrix(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Int> e(m, Int(0));
      e[j] = 1;
      const std::vector<Int> img = d->pi1_.project(d->endo_.apply(d->pi1_.lift(e)));
      for (std::size_t i = 0; i < m; ++i) d->pi1_sigma_(i, j) = img[i];
    }
  }
  return d;
}

inline void RootDatum::enumerate_weyl() {
  const std::size_t r = rank(), n = dim(), f = free_rank();
  const int R = static_cast<int>(roots_.size());
  const int P = static_cast<int>(positive_count_);

  // simple reflections: on roots and on Λ
  std::vector<std::vector<int>> sperm(r, std::vector<int>(R));
  std::vector<IntMatrix> smat(r);
  for (std::size_t j = 0; j < r; ++j) {
    for (int k = 0; k < R; ++k) {
      const auto& b = roots_[k].coeffs;
      int pairv = 0;
      for (std::size_t i = 0; i < r; ++i) pairv += b[i] * cartan_int_[i][j];
      std::vector<int> nb = b;
      nb[j] -= pairv;
      sperm[j][k] = find_root(nb);
    }
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < f; ++c) m(a, c) -= simple_coroots_[j].coords[a] * pairing_[j][c];
    smat[j] = m;
  }
  auto reduce_mat = [&](IntMatrix m) {
    for (std::size_t j = 0; j < n; ++j) {
      auto c = lattice_.reduce(m.col(j));
      for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
    }
    return m;
  };

  std::vector<std::vector<int>> perms;
  std::vector<IntMatrix> mats;
  std::vector<int> lens;
  std::map<std::vector<int>, int> index;
  std::vector<int> id(R);
  std::iota(id.begin(), id.end(), 0);
  perms.push_back(id);
  mats.push_back(IntMatrix::identity(n));
  lens.push_back(0);
  index[id] = 0;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int w : frontier)
      for (std::size_t j = 0; j < r; ++j) {
        if (perms[w][j] >= P) continue;  // w(α_j) < 0: descent
        std::vector<int> np(R);
        for (int k = 0; k < R; ++k) np[k] = perms[w][sperm[j][k]];
        if (index.count(np)) continue;
        const int idx = static_cast<int>(perms.size());
        if (static_cast<std::size_t>(idx) >= kMaxWeylOrder)
          throw Error("WEYL_TOO_LARGE", "finite Weyl group exceeds the enumeration cap");
        index[np] = idx;
        perms.push_back(np);
        mats.push_back(reduce_mat(mats[w] * smat[j]));
        lens.push_back(lens[w] + 1);
        next.push_back(idx);
      }
    frontier = std::move(next);
  }
  const std::size_t N = perms.size();
  std::vector<std::vector<int>> rm(N, std::vector<int>(r)), lm(N, std::vector<int>(r));
  std::vector<int> inv(N);
  for (std::size_t w = 0; w < N; ++w) {
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<int> a(R), b(R);
      for (int k = 0; k < R; ++k) {
        a[k] = perms[w][sperm[j][k]];
        b[k] = sperm[j][perms[w][k]];
      }
      rm[w][j] = index.at(a);
      lm[w][j] = index.at(b);
    }
    std::vector<int> ip(R);
    for (int k = 0; k < R; ++k) ip[perms[w][k]] = k;
    inv[w] = index.at(ip);
  }
  // lexicographically least reduced words via smallest left descents
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lens[a] < lens[b]; });
  std::vector<std::vector<int>> words(N);
  for (int w : order) {
    if (lens[w] == 0) continue;
    const int wi = inv[w];
    for (std::size_t i = 0; i < r; ++i)
      if (perms[wi][i] >= P) {  // w⁻¹(α_i) < 0
        words[w] = {static_cast<int>(i)};
        const auto& rest = words[lm[w][i]];
        words[w].insert(words[w].end(), rest.begin(), rest.end());
        break;
      }
  }
  // canonical index order: (length, word)
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (lens[a] != lens[b]) return lens[a] < lens[b];
    return words[a] < words[b];
  });
  std::vector<int> pos(N);
  for (std::size_t k = 0; k < N; ++k) pos[order[k]] = static_cast<int>(k);
  weyl_.assign(N, WeylElement{});
  for (std::size_t k = 0; k < N; ++k) {
    const int w = order[k];
    WeylElement& e = weyl_[k];
    e.mat = mats[w];
    e.word = words[w];
    e.root_perm = perms[w];
    e.inverse = pos[inv[w]];
    e.rmul.resize(r);
    e.lmul.resize(r);
    for (std::size_t j = 0; j < r; ++j) {
      e.rmul[j] = pos[rm[w][j]];
      e.lmul[j] = pos[lm[w][j]];
    }
  }
  if (N <= 1024) {
    mul_table_.assign(N * N, 0);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        int x = static_cast<int>(a);
        for (int j : weyl_[b].word) x = weyl_[x].rmul[j];
        mul_table_[a * N + b] = x;
      }
  }
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<int> img;
    for (int j : weyl_[k].word) img.push_back(perm_[j]);
    weyl_[k].sigma = weyl_from_word(img);
  }
  // reflections s_β
  std::map<std::vector<int>, int> by_perm;
  for (std::size_t k = 0; k < N; ++k) by_perm[weyl_[k].root_perm] = static_cast<int>(k);
  reflection_.assign(R, -1);
  for (int k = 0; k < R; ++k) {
    std::vector<int> p(R);
    const auto& cb = roots_[k].coroot_coeffs;
    for (int g = 0; g < R; ++g) {
      // s_β(γ) = γ − ⟨γ, β^∨⟩ β
      int pv = 0;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) pv += roots_[g].coeffs[i] * cartan_int_[i][j] * cb[j];
      std::vector<int> nb = roots_[g].coeffs;
      for (std::size_t i = 0; i < r; ++i) nb[i] -= pv * roots_[k].coeffs[i];
      p[g] = find_root(nb);
    }
    reflection_[k] = by_perm.at(p);
  }
}

inline void RootDatum::build_generators() {
  gens_.clear();
  gen_of_simple_.assign(rank(), -1);
  affine_gen_.assign(components_.size(), -1);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    AffineGen a;
    a.index = static_cast<int>(gens_.size());
    a.component = static_cast<int>(c);
    a.affine = true;
    const int theta = highest_root_[c];
    a.trans = roots_[theta].coroot;
    a.fin = reflection_[theta];
    affine_gen_[c] = a.index;
    gens_.push_back(a);
    for (int i : components_[c]) {
      AffineGen g;
      g.index = static_cast<int>(gens_.size());
      g.component = static_cast<int>(c);
      g.affine = false;
      g.simple_root = i;
      g.trans = zero();
      g.fin = weyl_simple(i);
      gen_of_simple_[i] = g.index;
      gens_.push_back(g);
    }
  }
  sigma_comp_.assign(components_.size(), -1);
  for (std::size_t c = 0; c < components_.size(); ++c)
    sigma_comp_[c] = component_of_[perm_[components_[c][0]]];
  sigma_gen_.assign(gens_.size(), -1);
  for (const AffineGen& g : gens_) {
    const CoWeight t = sigma(g.trans);
    const int w = weyl_[g.fin].sigma;
    for (const AffineGen& h : gens_)
      if (h.trans == t && h.fin == w) sigma_gen_[g.index] = h.index;
    if (sigma_gen_[g.index] < 0)
      throw Error("BAD_TWIST", "twist does not permute the simple affine reflections");
  }
}

// ---------------------------------------------------------------------------
// dominance

inline bool is_dominant(const RootDatum& d, const CoWeight& l) {
  for (std::size_t i = 0; i < d.rank(); ++i)
    if (d.pair(d.root_pairing()[i], l) < 0) return false;
  return true;
}

inline bool is_dominant(const RootDatum& d, const RatCoWeight& l) {
  for (std::size_t i = 0; i < d.rank(); ++i)
    if (d.pair(d.root_pairing()[i], l) < 0) return false;
  return true;
}

/// Chamber descent: applies the lowest-index simple reflection with negative
/// pairing until dominant. Returns the W₀ element u with u(λ) dominant.
template <typename V>
int chamber_descent(const RootDatum& d, V& l) {
  int u = d.weyl_identity();
  for (;;) {
    int bad = -1;
    for (std::size_t i = 0; i < d.rank(); ++i)
      if (d.pair(d.root_pairing()[i], l) < 0) {
        bad = static_cast<int>(i);
        break;
      }
    if (bad < 0) return u;
    const int s = d.weyl_simple(bad);
    l = d.act(s, l);
    u = d.weyl(u).lmul[bad];
  }
}

inline CoWeight dominant_rep(const RootDatum& d, CoWeight l) {
  chamber_descent(d, l);
  return l;
}

inline RatCoWeight dominant_rep(const RootDatum& d, RatCoWeight l) {
  chamber_descent(d, l);
  return l;
}

/// Coefficients c with v = Σ c_i α_i^∨ on the free part, if v lies in the
/// rational span of the simple coroots.
inline std::optional<std::vector<Rat>> coroot_coefficients(const RootDatum& d,
                                                           const std::vector<Rat>& v) {
  const std::size_t f = d.free_rank(), r = d.rank();
  std::vector<std::vector<Rat>> a(f, std::vector<Rat>(r));
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = Rat(d.simple_coroots()[j].coords[i]);
  std::vector<Rat> x(r);
  if (!solve_rational(a, v, x)) return std::nullopt;
  return x;
}

/// λ ≼ μ: μ − λ is a nonnegative integral combination of simple coroots of Σ
/// (including agreement of torsion parts).
inline bool dominance_leq(const RootDatum& d, const CoWeight& l, const CoWeight& m) {
  if (!is_dominant(d, l)) throw Error("NOT_DOMINANT", to_string(l) + " is not dominant");
  if (!is_dominant(d, m)) throw Error("NOT_DOMINANT", to_string(m) + " is not dominant");
  const CoWeight diff = d.sub(m, l);
  std::vector<Rat> v;
  for (std::size_t i = 0; i < d.free_rank(); ++i) v.emplace_back(diff.coords[i]);
  const auto c = coroot_coefficients(d, v);
  if (!c) return false;
  std::vector<Int> ci;
  for (const Rat& x : *c) {
    if (!is_integral(x) || x < 0) return false;
    ci.push_back(rat_numerator(x));
  }
  std::vector<Int> sum(d.dim(), Int(0));
  for (std::size_t j = 0; j < d.rank(); ++j)
    for (std::size_t k = 0; k < d.dim(); ++k) sum[k] += ci[j] * d.simple_coroots()[j].coords[k];
  return d.reduce(sum) == diff;
}

/// Rational dominance: b − a is a nonnegative rational combination of simple coroots.
inline bool rational_dominance_leq(const RootDatum& d, const RatCoWeight& a, const RatCoWeight& b) {
  std::vector<Rat> v(d.free_rank());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = b.coords[i] - a.coords[i];
  const auto c = coroot_coefficients(d, v);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rat& x) { return x >= 0; });
}

/// Average of a dominant μ over its σ-orbit (equivalently over all σ powers).
inline RatCoWeight galois_average(const RootDatum& d, const CoWeight& mu) {
  if (!is_dominant(d, mu)) throw Error("NOT_DOMINANT", to_string(mu) + " is not dominant");
  RatCoWeight acc{std::vector<Rat>(d.free_rank())};
  CoWeight cur = mu;
  for (int k = 0; k < d.sigma_order(); ++k) {
    for (std::size_t i = 0; i < d.free_rank(); ++i) acc.coords[i] += Rat(cur.coords[i]);
    cur = d.sigma(cur);
  }
  for (Rat& x : acc.coords) x /= d.sigma_order();
  return dominant_rep(d, acc);
}

inline bool is_basic_newton(const RootDatum& d, const RatCoWeight& nu) {
  for (std::size_t i = 0; i < d.rank(); ++i)
    if (d.pair(d.root_pairing()[i], nu) != 0) return false;
  return true;
}

/// Every dominant λ ≼ μ. Walks down from μ through dominant elements by
/// subtracting positive coroots (every cover in the dominance order on
/// dominant elements of μ + Q^∨ is of that form).
inline std::vector<CoWeight> dominant_below(const RootDatum& d, const CoWeight& mu) {
  if (!is_dominant(d, mu)) throw Error("NOT_DOMINANT", to_string(mu) + " is not dominant");
  std::set<CoWeight> seen{mu};
  std::vector<CoWeight> queue{mu};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t k = 0; k < d.positive_count(); ++k) {
      CoWeight l = d.sub(queue[q], d.roots()[k].coroot);
      if (!is_dominant(d, l) || seen.count(l)) continue;
      seen.insert(l);
      queue.push_back(l);
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// presets

inline const std::map<std::string, std::string>& preset_catalog() {
  static const std::map<std::string, std::string> catalog = {
      {"GL2", R"({"name":"GL2","cartan":[[2]],"lattice":{"free_rank":2,"torsion":[]},
        "simple_coroots":[[1,-1]],"root_pairing":[[1,-1]]})"},
      {"SL2", R"({"name":"SL2","cartan":[[2]],"lattice":{"free_rank":1,"torsion":[]},
        "simple_coroots":[[1]],"root_pairing":[[2]]})"},
      {"PGL2", R"({"name":"PGL2","cartan":[[2]],"lattice":{"free_rank":1,"torsion":[]},
        "simple_coroots":[[2]],"root_pairing":[[1]]})"},
      {"GL3", R"({"name":"GL3","cartan":[[2,-1],[-1,2]],"lattice":{"free_rank":3,"torsion":[]},
        "simple_coroots":[[1,-1,0],[0,1,-1]],"root_pairing":[[1,-1,0],[0,1,-1]]})"},
      {"SL3", R"({"name":"SL3","cartan":[[2,-1],[-1,2]],"lattice":{"free_rank":2,"torsion":[]},
        "simple_coroots":[[1,0],[0,1]],"root_pairing":[[2,-1],[-1,2]]})"},
      {"GSp4", R"({"name":"GSp4","cartan":[[2,-1],[-2,2]],"lattice":{"free_rank":3,"torsion":[]},
        "simple_coroots":[[1,-1,0],[0,1,0]],"root_pairing":[[1,-1,0],[0,2,-1]]})"},
      {"Sp4", R"({"name":"Sp4","cartan":[[2,-1],[-2,2]],"lattice":{"free_rank":2,"torsion":[]},
        "simple_coroots":[[1,-1],[0,1]],"root_pairing":[[1,-1],[0,2]]})"},
      {"ResE2-GL2", R"({"name":"ResE2-GL2","cartan":[[2,0],[0,2]],"lattice":{"free_rank":4,"torsion":[]},
        "simple_coroots":[[1,-1,0,0],[0,0,1,-1]],"root_pairing":[[1,-1,0,0],[0,0,1,-1]],
        "twist":{"perm":[1,0],"lattice_endo":[[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]]}})"},
      {"U3-unram", R"({"name":"U3-unram","cartan":[[2,-1],[-1,2]],"lattice":{"free_rank":3,"torsion":[]},
        "simple_coroots":[[1,-1,0],[0,1,-1]],"root_pairing":[[1,-1,0],[0,1,-1]],
        "twist":{"perm":[1,0],"lattice_endo":[[0,0,-1],[0,-1,0],[-1,0,0]]}})"},
      {"SU3-unram", R"({"name":"SU3-unram","cartan":[[2,-1],[-1,2]],"lattice":{"free_rank":2,"torsion":[]},
        "simple_coroots":[[1,0],[0,1]],"root_pairing":[[2,-1],[-1,2]],
        "twist":{"perm":[1,0],"lattice_endo":[[0,1],[1,0]]}})"},
      {"SU4-unram", R"({"name":"SU4-unram","cartan":[[2,-1,0],[-1,2,-1],[0,-1,2]],
        "lattice":{"free_rank":3,"torsion":[]},
        "simple_coroots":[[1,0,0],[0,1,0],[0,0,1]],"root_pairing":[[2,-1,0],[-1,2,-1],[0,-1,2]],
        "twist":{"perm":[2,1,0],"lattice_endo":[[0,0,1],[0,1,0],[1,0,0]]}})"},
      {"D4-triality", R"({"name":"D4-triality",
        "cartan":[[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[0,-1,0,2]],
        "lattice":{"free_rank":4,"torsion":[]},
        "simple_coroots":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
        "root_pairing":[[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[0,-1,0,2]],
        "twist":{"perm":[2,1,3,0],"lattice_endo":[[0,0,0,1],[0,1,0,0],[1,0,0,0],[0,0,1,0]]}})"},
  };
  return catalog;
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, _] : preset_catalog()) names.push_back(k);
  return names;
}

/// Resolves "preset:NAME" (built-in, then $IWK_PRESET_DIR/NAME.json) or a path
/// to a JSON datum spec file.
inline DatumSpec resolve_spec(const std::string& arg);

inline DatumSpec resolve_preset(const std::string& name) {
  const auto& cat = preset_catalog();
  if (auto it = cat.find(name); it != cat.end()) {
    DatumSpec s = DatumSpec::from_json(nlohmann::json::parse(it->second));
    return s;
  }
  if (const char* dir = std::getenv("IWK_PRESET_DIR")) {
    const std::filesystem::path p = std::filesystem::path(dir) / (name + ".json");
    if (std::filesystem::exists(p)) return resolve_spec(p.string());
  }
  throw Error("DATUM_ERROR", "unknown preset " + name);
}

inline DatumSpec resolve_spec(const std::string& arg) {
  if (arg.rfind("preset:", 0) == 0) return resolve_preset(arg.substr(7));
  std::ifstream in(arg);
  if (!in) throw Error("DATUM_ERROR", "cannot open datum spec file " + arg);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("DATUM_ERROR", arg + ": " + e.what());
  }
  DatumSpec s = DatumSpec::from_json(j);
  if (s.preset) return resolve_preset(*s.preset);
  return s;
}

inline DatumPtr build_datum(const DatumSpec& spec) {
  if (spec.preset) return RootDatum::build(resolve_preset(*spec.preset));
  return RootDatum::build(spec);
}

inline DatumPtr preset(const std::string& name) { return RootDatum::build(resolve_preset(name)); }

/// Parses "a,b,c" (free coordinates) optionally followed by ";t1,t2" torsion coordinates.
inline CoWeight parse_coweight(const RootDatum& d, const std::string& text) {
  auto split = [](const std::string& s) {
    std::vector<Int> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      const bool ok = !tok.empty() && tok != "-" &&
                      tok.find_first_not_of("0123456789", tok[0] == '-' ? 1 : 0) == std::string::npos;
      if (!ok) throw Error("USAGE", "malformed integer '" + tok + "'");
      out.emplace_back(tok);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  const std::size_t semi = text.find(';');
  std::vector<Int> free = split(text.substr(0, semi));
  std::vector<Int> tors = semi == std::string::npos ? std::vector<Int>{} : split(text.substr(semi + 1));
  if (free.size() != d.free_rank() || tors.size() != d.lattice().torsion().size())
    throw Error("USAGE", "coweight '" + text + "' must have " + std::to_string(d.free_rank()) +
                             " free and " + std::to_string(d.lattice().torsion().size()) +
                             " torsion coordinates");
  free.insert(free.end(), tors.begin(), tors.end());
  return d.reduce(free);
}

}  // namespace iwk
