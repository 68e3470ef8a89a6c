// The extended affine Weyl group W̃ = Λ ⋊ W₀: arithmetic, Iwahori–Matsumoto
// length, canonical reduced words, Bruhat order, Ω-classes and coset minima.
#pragma once

#include "iwk/root_datum.hpp"

#include <atomic>

namespace iwk {

/// t^λ·w with λ ∈ Λ and w ∈ W₀ (an index into the datum's Weyl table).
class IwElement {
 public:
  IwElement() = default;
  IwElement(DatumPtr d, CoWeight trans, int fin)
      : datum_(std::move(d)), trans_(std::move(trans)), fin_(fin) {}
  IwElement(const IwElement& o)
      : datum_(o.datum_), trans_(o.trans_), fin_(o.fin_), len_(o.len_.load(std::memory_order_relaxed)) {}
  IwElement(IwElement&& o) noexcept
      : datum_(std::move(o.datum_)), trans_(std::move(o.trans_)), fin_(o.fin_),
        len_(o.len_.load(std::memory_order_relaxed)) {}
  IwElement& operator=(const IwElement& o) {
    datum_ = o.datum_;
    trans_ = o.trans_;
    fin_ = o.fin_;
    len_.store(o.len_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
  }
  IwElement& operator=(IwElement&& o) noexcept {
    datum_ = std::move(o.datum_);
    trans_ = std::move(o.trans_);
    fin_ = o.fin_;
    len_.store(o.len_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
  }

  const RootDatum& datum() const { return *datum_; }
  const DatumPtr& datum_ptr() const noexcept { return datum_; }
  const CoWeight& trans() const noexcept { return trans_; }
  int fin() const noexcept { return fin_; }

  bool operator==(const IwElement& o) const { return fin_ == o.fin_ && trans_ == o.trans_; }
  bool operator!=(const IwElement& o) const { return !(*this == o); }
  bool operator<(const IwElement& o) const {
    if (trans_ != o.trans_) return trans_ < o.trans_;
    return fin_ < o.fin_;
  }

  /// Cached length; −1 when not yet computed.
  std::int64_t cached_length() const noexcept { return len_.load(std::memory_order_relaxed); }
  void cache_length(std::int64_t l) const noexcept { len_.store(l, std::memory_order_relaxed); }

 private:
  DatumPtr datum_;
  CoWeight trans_;
  int fin_ = 0;
  mutable std::atomic<std::int64_t> len_{-1};
};

inline void check_same(const IwElement& x, const IwElement& y) {
  if (x.datum_ptr() != y.datum_ptr()) throw Error("DATUM_MISMATCH", "elements belong to different data");
}

inline IwElement identity(const DatumPtr& d) { return IwElement(d, d->zero(), d->weyl_identity()); }
inline IwElement translation(const DatumPtr& d, const CoWeight& l) {
  return IwElement(d, l, d->weyl_identity());
}
inline IwElement finite(const DatumPtr& d, int w) { return IwElement(d, d->zero(), w); }
inline IwElement generator(const DatumPtr& d, int s) {
  const AffineGen& g = d->generators().at(s);
  return IwElement(d, g.trans, g.fin);
}

inline IwElement mul(const IwElement& x, const IwElement& y) {
  check_same(x, y);
  const RootDatum& d = x.datum();
  return IwElement(x.datum_ptr(), d.add(x.trans(), d.act(x.fin(), y.trans())),
                   d.weyl_mul(x.fin(), y.fin()));
}

inline IwElement inv(const IwElement& x) {
  const RootDatum& d = x.datum();
  const int wi = d.weyl(x.fin()).inverse;
  return IwElement(x.datum_ptr(), d.neg(d.act(wi, x.trans())), wi);
}

inline IwElement apply_sigma(const IwElement& x) {
  const RootDatum& d = x.datum();
  return IwElement(x.datum_ptr(), d.sigma(x.trans()), d.weyl(x.fin()).sigma);
}

inline IwElement sigma_power(const IwElement& x, int k) {
  IwElement y = x;
  const int e = x.datum().sigma_order();
  for (int i = 0; i < ((k % e) + e) % e; ++i) y = apply_sigma(y);
  return y;
}

/// Iwahori–Matsumoto length over Σ.
inline std::int64_t length(const IwElement& x) {
  if (const auto c = x.cached_length(); c >= 0) return c;
  const RootDatum& d = x.datum();
  const std::vector<Int> p = d.simple_pairings(x.trans());
  Int total = 0;
  const int wi = d.weyl(x.fin()).inverse;
  for (std::size_t k = 0; k < d.positive_count(); ++k) {
    const Int a = d.root_pairing_from_simple(static_cast<int>(k), p);
    if (d.maps_positive(wi, static_cast<int>(k)))
      total += abs_int(a);
    else
      total += abs_int(a - 1);
  }
  const std::int64_t l = to_i64(total);
  x.cache_length(l);
  return l;
}

/// s·x < x for the generator s.
inline bool is_left_descent(const IwElement& x, int s) {
  const RootDatum& d = x.datum();
  const AffineGen& g = d.generators().at(s);
  const int wi = d.weyl(x.fin()).inverse;
  if (!g.affine) {
    const Int p = d.pair(d.root_pairing()[g.simple_root], x.trans());
    if (p != 0) return p < 0;
    return !d.maps_positive(wi, g.simple_root);
  }
  const int theta = d.highest_root(g.component);
  const Int p = d.pair(d.roots()[theta].covector, x.trans());
  if (p != 1) return p > 1;
  return d.maps_positive(wi, theta);
}

inline bool is_right_descent(const IwElement& x, int s) { return is_left_descent(inv(x), s); }

inline IwElement left_mul_gen(const IwElement& x, int s) { return mul(generator(x.datum_ptr(), s), x); }
inline IwElement right_mul_gen(const IwElement& x, int s) { return mul(x, generator(x.datum_ptr(), s)); }

struct ReducedWord {
  std::vector<int> word;  // generator indices, x = s_{word[0]}···s_{word[k-1]}·omega
  IwElement omega;
};

/// Lexicographically least reduced word (smallest left descent first) and the
/// length-zero tail.
inline ReducedWord reduced_word(const IwElement& x) {
  const RootDatum& d = x.datum();
  const int nS = static_cast<int>(d.generators().size());
  ReducedWord out;
  IwElement cur = x;
  const std::int64_t len = length(x);
  for (std::int64_t step = 0; step < len; ++step) {
    int found = -1;
    for (int s = 0; s < nS; ++s)
      if (is_left_descent(cur, s)) {
        found = s;
        break;
      }
    if (found < 0) throw Error("INTERNAL", "no descent found on an element of positive length");
    out.word.push_back(found);
    cur = left_mul_gen(cur, found);
  }
  cur.cache_length(0);
  out.omega = cur;
  return out;
}

inline IwElement from_word(const DatumPtr& d, const std::vector<int>& word, const IwElement& omega) {
  IwElement x = omega;
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = mul(generator(d, *it), x);
  return x;
}

/// Class in π₁(G)_I = Λ/Q^∨(Σ), canonical coordinates.
inline std::vector<Int> omega_component(const IwElement& x) { return x.datum().pi1_class(x.trans()); }

/// Length-zero element of the Ω-class of t^λ.
inline IwElement omega_of_class(const DatumPtr& d, const CoWeight& l) {
  return reduced_word(translation(d, l)).omega;
}

/// Bruhat order via Deodhar's property Z on the reduced word of y.
inline bool bruhat_leq(const IwElement& x, const IwElement& y) {
  check_same(x, y);
  if (length(x) > length(y)) return false;
  if (omega_component(x) != omega_component(y)) return false;
  const ReducedWord ry = reduced_word(y);
  IwElement cur = x;
  for (int s : ry.word)
    if (is_left_descent(cur, s)) cur = left_mul_gen(cur, s);
  return cur == ry.omega;
}

inline bool subgroup_finite(const RootDatum& d, const std::vector<int>& K) {
  std::set<int> ks(K.begin(), K.end());
  for (std::size_t c = 0; c < d.components().size(); ++c) {
    bool all = ks.count(d.affine_generator(static_cast<int>(c))) > 0;
    for (int i : d.components()[c]) all = all && ks.count(d.generator_of_simple(i)) > 0;
    if (all) return false;
  }
  return true;
}

enum class CosetSide { left, right, both };

inline IwElement min_coset_rep(const std::vector<int>& K, const IwElement& x, CosetSide side) {
  const RootDatum& d = x.datum();
  for (int s : K)
    if (s < 0 || s >= static_cast<int>(d.generators().size()))
      throw Error("BAD_LEVEL", "generator index " + std::to_string(s) + " out of range");
  if (!subgroup_finite(d, K)) throw Error("K_INFINITE", "W_K is infinite");
  IwElement cur = x;
  for (bool changed = true; changed;) {
    changed = false;
    if (side != CosetSide::right)
      for (int s : K)
        if (is_left_descent(cur, s)) {
          cur = left_mul_gen(cur, s);
          changed = true;
        }
    if (side != CosetSide::left)
      for (int s : K)
        if (is_right_descent(cur, s)) {
          cur = right_mul_gen(cur, s);
          changed = true;
        }
  }
  return cur;
}

inline bool is_left_K_minimal(const std::vector<int>& K, const IwElement& x) {
  for (int s : K)
    if (is_left_descent(x, s)) return false;
  return true;
}

/// Index of the generator equal to g, or −1.
inline int generator_index(const IwElement& g) {
  const RootDatum& d = g.datum();
  for (const AffineGen& a : d.generators())
    if (a.trans == g.trans() && a.fin == g.fin()) return a.index;
  return -1;
}

/// Permutation of S induced by s ↦ τ·σ(s)·τ⁻¹ for a length-zero τ.
inline std::vector<int> tau_sigma_action(const IwElement& tau) {
  if (length(tau) != 0) throw Error("TAU_NOT_LENGTH_ZERO", "τ must have length zero");
  const DatumPtr& d = tau.datum_ptr();
  const IwElement ti = inv(tau);
  std::vector<int> perm;
  for (std::size_t s = 0; s < d->generators().size(); ++s) {
    const int idx = generator_index(mul(mul(tau, generator(d, d->sigma_generator(static_cast<int>(s)))), ti));
    if (idx < 0) throw Error("INTERNAL", "conjugation by τ does not preserve S");
    perm.push_back(idx);
  }
  return perm;
}

/// Canonical total order: (length, reduced word, Ω-class).
struct CanonicalKey {
  std::int64_t len;
  std::vector<int> word;
  std::vector<Int> omega_trans;
  int omega_fin;
  bool operator<(const CanonicalKey& o) const {
    if (len != o.len) return len < o.len;
    if (word != o.word) return word < o.word;
    if (omega_trans != o.omega_trans) return omega_trans < o.omega_trans;
    return omega_fin < o.omega_fin;
  }
};

inline CanonicalKey canonical_key(const IwElement& x) {
  const ReducedWord rw = reduced_word(x);
  return {length(x), rw.word, rw.omega.trans().coords, rw.omega.fin()};
}

inline void canonical_sort(std::vector<IwElement>& xs) {
  std::vector<std::pair<CanonicalKey, IwElement>> keyed;
  keyed.reserve(xs.size());
  for (auto& x : xs) keyed.emplace_back(canonical_key(x), std::move(x));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  xs.clear();
  for (auto& [k, x] : keyed) xs.push_back(std::move(x));
}

inline std::string generator_label(int s) { return "s" + std::to_string(s); }

inline std::string word_string(const std::vector<int>& word) {
  std::vector<std::string> parts;
  for (int s : word) parts.push_back(generator_label(s));
  return parts.empty() ? "e" : join(parts, "");
}

/// Human-readable form: reduced word followed by the Ω-tail when nontrivial.
inline std::string element_label(const IwElement& x) {
  const ReducedWord rw = reduced_word(x);
  std::string s = rw.word.empty() ? "" : word_string(rw.word);
  const bool trivial_omega = rw.omega == identity(x.datum_ptr());
  if (!trivial_omega) {
    if (!s.empty()) s += "·";
    s += "τ[" + join(rw.omega.trans().coords) + "|" + join(x.datum().weyl(rw.omega.fin()).word, "") + "]";
  }
  return s.empty() ? "e" : s;
}

inline nlohmann::json element_to_json(const IwElement& x) {
  return {{"trans", detail::int_vec_json(x.trans().coords)}, {"fin_word", x.datum().weyl(x.fin()).word}};
}

inline IwElement element_from_json(const DatumPtr& d, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("trans") || !j.contains("fin_word"))
    throw Error("BAD_ELEMENT", "element needs trans and fin_word");
  const std::vector<Int> t = detail::json_int_vec(j["trans"], "trans");
  if (t.size() != d->dim()) throw Error("BAD_ELEMENT", "trans has the wrong number of coordinates");
  std::vector<int> word;
  for (const auto& v : j["fin_word"]) {
    if (!v.is_number_integer()) throw Error("BAD_ELEMENT", "fin_word entries must be integers");
    word.push_back(v.get<int>());
  }
  return IwElement(d, d->reduce(t), d->weyl_from_word(word));
}

}  // namespace iwk
