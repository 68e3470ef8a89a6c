// Finitely generated abelian groups over the integers: Smith normal form,
// integer kernels, cokernels in canonical (free, torsion) coordinates,
// coinvariants of an endomorphism and fixed subgroups.
#pragma once

#include "iwk/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iwk {

struct SmithForm {
  IntMatrix U;      // unimodular, rows x rows
  IntMatrix U_inv;  // inverse of U
  IntMatrix D;      // diagonal with d_1 | d_2 | ...
  IntMatrix V;      // unimodular, cols x cols
  std::size_t rank = 0;
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst += q * row_src
inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q.is_zero()) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!m(src, j).is_zero()) m(dst, j) += q * m(src, j);
}
inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q.is_zero()) return;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m(i, src).is_zero()) m(i, dst) += q * m(i, src);
}

struct SnfWork {
  IntMatrix A, U, Uinv, V;

  void row_swap(std::size_t a, std::size_t b) {
    swap_rows(A, a, b);
    swap_rows(U, a, b);
    swap_cols(Uinv, a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    swap_cols(A, a, b);
    swap_cols(V, a, b);
  }
  // row_dst += q row_src ; inverse is col_src -= q col_dst on Uinv
  void row_add(std::size_t dst, std::size_t src, const Int& q) {
    add_row(A, dst, src, q);
    add_row(U, dst, src, q);
    add_col(Uinv, src, dst, Int(-q));
  }
  void col_add(std::size_t dst, std::size_t src, const Int& q) {
    add_col(A, dst, src, q);
    add_col(V, dst, src, q);
  }
  void row_negate(std::size_t i) {
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
    for (std::size_t k = 0; k < Uinv.rows(); ++k) Uinv(k, i) = -Uinv(k, i);
  }
};

}  // namespace detail

/// Smith normal form U·m·V = D with successive divisibility of the diagonal.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  detail::SnfWork w{m, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c)};
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // pivot: smallest nonzero absolute value in the trailing block
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        const Int& v = w.A(i, j);
        if (v.is_zero()) continue;
        if (!found || abs_int(v) < best) {
          best = abs_int(v);
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (w.A(i, t).is_zero()) continue;
        const Int q = div_floor(w.A(i, t), w.A(t, t));
        w.row_add(i, t, Int(-q));
        if (!w.A(i, t).is_zero()) {
          w.row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (w.A(t, j).is_zero()) continue;
        const Int q = div_floor(w.A(t, j), w.A(t, t));
        w.col_add(j, t, Int(-q));
        if (!w.A(t, j).is_zero()) {
          w.col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // pivot row and column are clear; enforce divisibility of the block
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!(w.A(i, j) % w.A(t, t)).is_zero()) {
            w.row_add(t, i, Int(1));
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (w.A(t, t) < 0) w.row_negate(t);
  }
  return SmithForm{std::move(w.U), std::move(w.Uinv), std::move(w.A), std::move(w.V), t};
}

/// Columns spanning the integer kernel {x : m x = 0}.
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = s.rank; j < m.cols(); ++j) basis.push_back(s.V.col(j));
  return basis;
}

/// A finitely generated abelian group, given as the cokernel of `presentation`
/// (columns are relations among `generators()` generators) together with the
/// change of coordinates to canonical (free first, torsion ascending) form.
class FgAbelian {
 public:
  FgAbelian() = default;

  /// Cokernel of the relation columns `relations` on `generators` generators.
  static FgAbelian cokernel(std::size_t generators, const IntMatrix& relations) {
    if (relations.rows() != generators && relations.cols() != 0)
      throw Error("BAD_MATRIX", "relation columns must have one entry per generator");
    IntMatrix rel = relations.cols() == 0 ? IntMatrix(generators, 0) : relations;
    const SmithForm s = smith_normal_form(rel);
    FgAbelian g;
    g.presentation_ = rel;
    std::vector<std::size_t> torsion_rows, free_rows;
    for (std::size_t i = 0; i < generators; ++i) {
      if (i < s.rank) {
        if (s.D(i, i) != 1) torsion_rows.push_back(i);
      } else {
        free_rows.push_back(i);
      }
    }
    g.free_rank_ = free_rows.size();
    for (std::size_t i : torsion_rows) g.torsion_.push_back(s.D(i, i));
    const std::size_t n = g.free_rank_ + g.torsion_.size();
    g.to_canonical_ = IntMatrix(n, generators);
    g.from_canonical_ = IntMatrix(generators, n);
    std::size_t k = 0;
    for (std::size_t i : free_rows) {
      for (std::size_t j = 0; j < generators; ++j) g.to_canonical_(k, j) = s.U(i, j);
      for (std::size_t j = 0; j < generators; ++j) g.from_canonical_(j, k) = s.U_inv(j, i);
      ++k;
    }
    for (std::size_t i : torsion_rows) {
      for (std::size_t j = 0; j < generators; ++j) g.to_canonical_(k, j) = s.U(i, j);
      for (std::size_t j = 0; j < generators; ++j) g.from_canonical_(j, k) = s.U_inv(j, i);
      ++k;
    }
    return g;
  }

  /// The group Z^free ⊕ ⊕ Z/d_i presented in its own canonical coordinates.
  static FgAbelian canonical(std::size_t free_rank, const std::vector<Int>& torsion) {
    const std::size_t n = free_rank + torsion.size();
    IntMatrix rel(n, torsion.size());
    for (std::size_t j = 0; j < torsion.size(); ++j) {
      if (torsion[j] < 2) throw Error("BAD_LATTICE", "torsion orders must be at least 2");
      if (j > 0 && !(torsion[j] % torsion[j - 1]).is_zero())
        throw Error("BAD_LATTICE", "torsion orders must divide successively");
      rel(free_rank + j, j) = torsion[j];
    }
    FgAbelian g;
    g.presentation_ = rel;
    g.free_rank_ = free_rank;
    g.torsion_ = torsion;
    g.to_canonical_ = IntMatrix::identity(n);
    g.from_canonical_ = IntMatrix::identity(n);
    return g;
  }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Int>& torsion() const noexcept { return torsion_; }
  std::size_t generators() const noexcept { return presentation_.rows(); }
  std::size_t dim() const noexcept { return free_rank_ + torsion_.size(); }
  const IntMatrix& presentation() const noexcept { return presentation_; }
  const IntMatrix& to_canonical() const noexcept { return to_canonical_; }
  const IntMatrix& from_canonical() const noexcept { return from_canonical_; }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return dim() == 0; }

  /// Order of a finite group; throws for infinite groups.
  Int order() const {
    if (!is_finite()) throw Error("INFINITE_GROUP", "group has positive free rank");
    Int o = 1;
    for (const Int& d : torsion_) o *= d;
    return o;
  }

  /// Reduces canonical coordinates (torsion entries modulo their orders).
  std::vector<Int> reduce(std::vector<Int> y) const {
    if (y.size() != dim()) throw Error("BAD_ELEMENT", "canonical coordinate arity mismatch");
    for (std::size_t j = 0; j < torsion_.size(); ++j)
      y[free_rank_ + j] = mod_floor(y[free_rank_ + j], torsion_[j]);
    return y;
  }

  /// Image of a presentation-coordinate vector in canonical coordinates.
  std::vector<Int> project(const std::vector<Int>& x) const {
    return reduce(to_canonical_.apply(x));
  }

  /// A presentation-coordinate lift of a canonical element.
  std::vector<Int> lift(const std::vector<Int>& y) const { return from_canonical_.apply(y); }

  std::vector<Int> zero() const { return std::vector<Int>(dim()); }

  std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b) const {
    std::vector<Int> s(dim());
    for (std::size_t i = 0; i < dim(); ++i) s[i] = a[i] + b[i];
    return reduce(std::move(s));
  }
  std::vector<Int> negate(const std::vector<Int>& a) const {
    std::vector<Int> s(dim());
    for (std::size_t i = 0; i < dim(); ++i) s[i] = -a[i];
    return reduce(std::move(s));
  }

  /// Human-readable structure such as "Z^2 + Z/2".
  std::string describe() const {
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.push_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (const Int& d : torsion_) parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    return join(parts, " + ");
  }

  bool same_structure(const FgAbelian& o) const {
    return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
  IntMatrix presentation_;
  IntMatrix to_canonical_;
  IntMatrix from_canonical_;
};

/// coker(id − endo) on Z^lattice_rank, with its projection map.
inline FgAbelian coinvariants(std::size_t lattice_rank, const IntMatrix& endo) {
  if (endo.rows() != lattice_rank || endo.cols() != lattice_rank)
    throw Error("BAD_MATRIX", "endomorphism must be square of the lattice rank");
  return FgAbelian::cokernel(lattice_rank, IntMatrix::identity(lattice_rank) - endo);
}

/// Matrix of an endomorphism of the canonical group `g` must send each
/// torsion relation d_j e_j to zero.
inline bool endo_well_defined(const FgAbelian& g, const IntMatrix& endo) {
  const std::size_t n = g.dim(), f = g.free_rank();
  if (endo.rows() != n || endo.cols() != n) return false;
  for (std::size_t j = 0; j < g.torsion().size(); ++j) {
    const Int& dj = g.torsion()[j];
    for (std::size_t i = 0; i < n; ++i) {
      const Int v = endo(i, f + j) * dj;
      if (i < f) {
        if (!v.is_zero()) return false;
      } else if (!(v % g.torsion()[i - f]).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

struct Subgroup {
  FgAbelian group;      // the subgroup in its own canonical coordinates
  IntMatrix inclusion;  // ambient canonical coords x subgroup canonical coords
};

/// Kernel of (endo − id) on a group given in canonical coordinates.
inline Subgroup fixed_subgroup(const FgAbelian& g, const IntMatrix& endo) {
  if (!endo_well_defined(g, endo))
    throw Error("ENDO_ILL_DEFINED", "endomorphism does not preserve the torsion relations");
  const std::size_t n = g.dim(), f = g.free_rank(), t = g.torsion().size();
  IntMatrix rel(n, t);
  for (std::size_t j = 0; j < t; ++j) rel(f + j, j) = g.torsion()[j];
  IntMatrix shifted = endo - IntMatrix::identity(n);
  IntMatrix neg_rel(n, t);
  for (std::size_t j = 0; j < t; ++j) neg_rel(f + j, j) = -g.torsion()[j];

  // x with (endo - id) x ∈ span(rel)
  std::vector<std::vector<Int>> gens;
  for (const auto& k : integer_kernel(IntMatrix::hcat(shifted, neg_rel)))
    gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(n));
  const IntMatrix X = IntMatrix::from_columns(gens, n);

  // relations among the generators: c with X c ∈ span(rel)
  std::vector<std::vector<Int>> rels;
  for (const auto& k : integer_kernel(IntMatrix::hcat(X, neg_rel)))
    rels.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(gens.size()));
  const FgAbelian h = FgAbelian::cokernel(gens.size(), IntMatrix::from_columns(rels, gens.size()));

  IntMatrix incl = X * h.from_canonical();
  for (std::size_t j = 0; j < incl.cols(); ++j) {
    std::vector<Int> c = g.reduce(incl.col(j));
    for (std::size_t i = 0; i < n; ++i) incl(i, j) = c[i];
  }
  return Subgroup{h, incl};
}

}  // namespace iwk
