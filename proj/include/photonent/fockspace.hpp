#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "photonent/numerics.hpp"
#include "photonent/schmidt.hpp"

namespace photonent {

enum class Side { left, right };

/// Photon-number sector of a single-side basis state. `opaque` marks generic
/// levels with no photon-number meaning (e.g. random test matrices).
enum class Sector { vacuum = 0, one_photon = 1, two_photon = 2, opaque = 3 };

enum class Polarization { none = 0, h = 1, v = 2 };

struct BasisLabel {
  Sector sector = Sector::vacuum;
  Polarization polarization = Polarization::none;
  int index = 0;

  static BasisLabel vacuum() { return {Sector::vacuum, Polarization::none, 0}; }
  static BasisLabel one_photon(int mode, Polarization pol = Polarization::none) {
    return {Sector::one_photon, pol, mode};
  }
  static BasisLabel two_photon(int pair) { return {Sector::two_photon, Polarization::none, pair}; }
  static BasisLabel opaque(int level) { return {Sector::opaque, Polarization::none, level}; }

  /// 0, 1 or 2; -1 for opaque levels.
  int photon_number() const {
    switch (sector) {
      case Sector::vacuum: return 0;
      case Sector::one_photon: return 1;
      case Sector::two_photon: return 2;
      case Sector::opaque: return -1;
    }
    return -1;
  }

  bool same_class(const BasisLabel& o) const { return sector == o.sector && polarization == o.polarization; }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
  friend bool operator<(const BasisLabel& a, const BasisLabel& b) {
    return std::tie(a.sector, a.polarization, a.index) < std::tie(b.sector, b.polarization, b.index);
  }
};

inline std::string to_string(const BasisLabel& l) {
  const char* pol = l.polarization == Polarization::h ? "H" : l.polarization == Polarization::v ? "V" : "";
  switch (l.sector) {
    case Sector::vacuum: return "vac";
    case Sector::one_photon: return std::string("1") + pol + "[" + std::to_string(l.index) + "]";
    case Sector::two_photon: return "2[" + std::to_string(l.index) + "]";
    case Sector::opaque: return "q" + std::to_string(l.index);
  }
  return "?";
}

/// Ordered labels of one side. Order is canonical: vacuum, one-photon
/// (grouped by polarization, ascending index), two-photon, opaque.
class SideBasis {
 public:
  SideBasis(Side side, std::vector<BasisLabel> labels) : side_(side), labels_(std::move(labels)) {
    detail::require(!labels_.empty(), "SideBasis: no labels");
    std::sort(labels_.begin(), labels_.end());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      const BasisLabel& l = labels_[i];
      detail::require(l.sector != Sector::vacuum || l.polarization == Polarization::none,
                      "SideBasis: vacuum carries no polarization");
      const bool starts_group = i == 0 || !labels_[i - 1].same_class(l);
      if (starts_group) {
        detail::require(l.index == 0, "SideBasis: label indices must be dense from 0");
      } else {
        detail::require(l.index != labels_[i - 1].index, "SideBasis: duplicate label " + to_string(l));
        detail::require(l.index == labels_[i - 1].index + 1, "SideBasis: label indices must be dense from 0");
      }
    }
    detail::require(std::count_if(labels_.begin(), labels_.end(),
                                  [](const BasisLabel& l) { return l.sector == Sector::vacuum; }) <= 1,
                    "SideBasis: at most one vacuum");
  }

  Side side() const { return side_; }
  Index size() const { return static_cast<Index>(labels_.size()); }
  const BasisLabel& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<BasisLabel>& labels() const { return labels_; }

  Index index_of(const BasisLabel& l) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || !(*it == l)) throw InvalidInput("SideBasis: label not in basis: " + to_string(l));
    return static_cast<Index>(it - labels_.begin());
  }

  friend bool operator==(const SideBasis&, const SideBasis&) = default;

 private:
  Side side_;
  std::vector<BasisLabel> labels_;
};

/// Tensor-product basis; flat index of |i>_L |j>_R is i * |R| + j.
class BipartiteBasis {
 public:
  BipartiteBasis(std::vector<BasisLabel> left, std::vector<BasisLabel> right)
      : left_(Side::left, std::move(left)), right_(Side::right, std::move(right)) {}

  /// {vacuum, one photon} on each side.
  static BipartiteBasis qubits() {
    return {{BasisLabel::vacuum(), BasisLabel::one_photon(0)}, {BasisLabel::vacuum(), BasisLabel::one_photon(0)}};
  }

  /// `n` opaque levels per side.
  static BipartiteBasis opaque(int n_left, int n_right) {
    std::vector<BasisLabel> l, r;
    for (int i = 0; i < n_left; ++i) l.push_back(BasisLabel::opaque(i));
    for (int i = 0; i < n_right; ++i) r.push_back(BasisLabel::opaque(i));
    return {std::move(l), std::move(r)};
  }

  const SideBasis& left() const { return left_; }
  const SideBasis& right() const { return right_; }
  Index dim() const { return left_.size() * right_.size(); }
  Index flat(Index i, Index j) const { return i * right_.size() + j; }

  friend bool operator==(const BipartiteBasis&, const BipartiteBasis&) = default;

 private:
  SideBasis left_;
  SideBasis right_;
};

namespace detail {

inline ComplexVector flatten(const ComplexMatrix& a) {
  ComplexVector v(a.size());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

inline ComplexMatrix unflatten(const ComplexVector& v, Index rows, Index cols) {
  ComplexMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

}  // namespace detail

/// Normalized pure state; amplitudes(i, j) multiplies |i>_L |j>_R.
class BipartiteState {
 public:
  struct Term {
    BasisLabel left;
    BasisLabel right;
    cplx amplitude;
  };

  BipartiteState(BipartiteBasis basis, ComplexMatrix amplitudes)
      : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    detail::require(amplitudes_.rows() == basis_.left().size() && amplitudes_.cols() == basis_.right().size(),
                    "BipartiteState: amplitude shape does not match basis");
    detail::require(detail::all_finite(amplitudes_), "BipartiteState: non-finite amplitude");
    detail::require(std::abs(amplitudes_.squaredNorm() - 1.0) <= 1e-12, "BipartiteState: state is not normalized");
  }

  static BipartiteState from_terms(BipartiteBasis basis, const std::vector<Term>& terms) {
    ComplexMatrix a = ComplexMatrix::Zero(basis.left().size(), basis.right().size());
    for (const Term& t : terms) a(basis.left().index_of(t.left), basis.right().index_of(t.right)) += t.amplitude;
    return {std::move(basis), std::move(a)};
  }

  const BipartiteBasis& basis() const { return basis_; }
  const ComplexMatrix& amplitudes() const { return amplitudes_; }
  ComplexVector vector() const { return detail::flatten(amplitudes_); }

 private:
  BipartiteBasis basis_;
  ComplexMatrix amplitudes_;
};

/// One term of a density ensemble: weight * |A><A| with A an amplitude matrix.
struct EnsembleMember {
  double weight;
  ComplexMatrix amplitudes;
};

/// Density matrix rho = sum_m w_m |A_m><A_m| held in factored form; the dense
/// matrix is materialized on demand. Trace is one within 1e-12 and the
/// ensemble form makes it positive semidefinite by construction.
class BipartiteDensity {
 public:
  static BipartiteDensity from_ensemble(BipartiteBasis basis, std::vector<EnsembleMember> members) {
    validate_members(basis, members);
    BipartiteDensity out(std::move(basis), std::move(members));
    detail::require(std::abs(out.trace() - 1.0) <= 1e-12, "BipartiteDensity: trace must be 1");
    return out;
  }

  /// Rescales weights so the trace is exactly one. For builders that project
  /// onto a truncated basis and lose a sub-threshold amount of norm.
  static BipartiteDensity normalized_from_ensemble(BipartiteBasis basis, std::vector<EnsembleMember> members) {
    validate_members(basis, members);
    BipartiteDensity out(std::move(basis), std::move(members));
    const double tr = out.trace();
    detail::require(tr > 0.0, "BipartiteDensity: zero trace");
    for (auto& m : out.members_) m.weight /= tr;
    return out;
  }

  /// From a dense matrix. Rejects trace != 1 and eigenvalues below -1e-12
  /// rather than clipping them.
  static BipartiteDensity from_matrix(BipartiteBasis basis, const HermitianMatrix& rho) {
    detail::require(rho.dim() == basis.dim(), "BipartiteDensity: matrix dimension does not match basis");
    detail::require(std::abs(rho.trace() - cplx(1.0)) <= 1e-12, "BipartiteDensity: trace must be 1");
    const Spectrum s = eigh(rho);
    std::vector<EnsembleMember> members;
    for (Index k = 0; k < s.values.size(); ++k) {
      const double e = s.values(k);
      detail::require(e >= -1e-12, "BipartiteDensity: matrix is not positive semidefinite");
      if (e > 0.0)
        members.push_back({e, detail::unflatten(s.vectors->col(k), basis.left().size(), basis.right().size())});
    }
    return BipartiteDensity(std::move(basis), std::move(members));
  }

  const BipartiteBasis& basis() const { return basis_; }
  const std::vector<EnsembleMember>& members() const { return members_; }
  Index dim() const { return basis_.dim(); }

  double trace() const {
    double t = 0.0;
    for (const auto& m : members_) t += m.weight * m.amplitudes.squaredNorm();
    return t;
  }

  /// rho as a dense dim x dim matrix in the flat basis order.
  ComplexMatrix dense() const {
    ComplexMatrix rho = ComplexMatrix::Zero(dim(), dim());
    for (const auto& m : members_) {
      const ComplexVector v = detail::flatten(m.amplitudes);
      rho.noalias() += m.weight * (v * v.adjoint());
    }
    return 0.5 * (rho + rho.adjoint());
  }

  HermitianMatrix matrix() const { return HermitianMatrix(dense()); }

 private:
  BipartiteDensity(BipartiteBasis basis, std::vector<EnsembleMember> members)
      : basis_(std::move(basis)), members_(std::move(members)) {}

  static void validate_members(const BipartiteBasis& basis, const std::vector<EnsembleMember>& members) {
    detail::require(!members.empty(), "BipartiteDensity: empty ensemble");
    for (const auto& m : members) {
      detail::require(std::isfinite(m.weight) && m.weight >= 0.0, "BipartiteDensity: weights must be >= 0");
      detail::require(m.amplitudes.rows() == basis.left().size() && m.amplitudes.cols() == basis.right().size(),
                      "BipartiteDensity: member shape does not match basis");
      detail::require(detail::all_finite(m.amplitudes), "BipartiteDensity: non-finite amplitude");
    }
  }

  BipartiteBasis basis_;
  std::vector<EnsembleMember> members_;
};

inline BipartiteDensity density_from_pure(const BipartiteState& s) {
  return BipartiteDensity::from_ensemble(s.basis(), {{1.0, s.amplitudes()}});
}

struct WeightedDensity {
  double weight;
  BipartiteDensity density;
};

/// Convex combination of densities over one basis.
inline BipartiteDensity mix(const std::vector<WeightedDensity>& parts) {
  detail::require(!parts.empty(), "mix: nothing to mix");
  double total = 0.0;
  for (const auto& p : parts) {
    detail::require(std::isfinite(p.weight) && p.weight >= 0.0, "mix: weights must be >= 0");
    total += p.weight;
  }
  detail::require(std::abs(total - 1.0) <= 1e-12, "mix: weights must sum to 1");
  const BipartiteBasis& basis = parts.front().density.basis();
  std::vector<EnsembleMember> members;
  for (const auto& p : parts) {
    if (!(p.density.basis() == basis)) throw BasisMismatch("mix: densities live on different bases");
    for (const auto& m : p.density.members()) members.push_back({p.weight * m.weight, m.amplitudes});
  }
  return BipartiteDensity::from_ensemble(basis, std::move(members));
}

/// Same density with the roles of left and right exchanged.
inline BipartiteDensity swap_sides(const BipartiteDensity& rho) {
  std::vector<EnsembleMember> members;
  for (const auto& m : rho.members()) members.push_back({m.weight, m.amplitudes.transpose()});
  return BipartiteDensity::normalized_from_ensemble(
      BipartiteBasis(rho.basis().right().labels(), rho.basis().left().labels()), std::move(members));
}

/// Tr rho^2.
inline double purity(const BipartiteDensity& rho) {
  const auto& members = rho.members();
  const Index r = static_cast<Index>(members.size());
  if (r > rho.dim()) return rho.dense().squaredNorm();
  ComplexMatrix factor(rho.dim(), r);
  for (Index m = 0; m < r; ++m) {
    const auto& mem = members[static_cast<std::size_t>(m)];
    factor.col(m) = std::sqrt(mem.weight) * detail::flatten(mem.amplitudes);
  }
  const ComplexMatrix gram = factor.adjoint() * factor;
  return gram.squaredNorm();
}

/// Dense partial transpose on the right side: rho^G_{(i,j),(k,l)} = rho_{(i,l),(k,j)}.
inline HermitianMatrix partial_transpose(const BipartiteDensity& rho) {
  const ComplexMatrix dense = rho.dense();
  const Index nl = rho.basis().left().size();
  const Index nr = rho.basis().right().size();
  ComplexMatrix pt(rho.dim(), rho.dim());
  for (Index i = 0; i < nl; ++i)
    for (Index j = 0; j < nr; ++j)
      for (Index k = 0; k < nl; ++k)
        for (Index l = 0; l < nr; ++l) pt(i * nr + j, k * nr + l) = dense(i * nr + l, k * nr + j);
  return HermitianMatrix(std::move(pt));
}

namespace detail {

// Contiguous runs of labels sharing (sector, polarization).
struct LabelClasses {
  std::vector<std::pair<Index, Index>> ranges;  // [begin, end)
};

inline LabelClasses classify(const SideBasis& side) {
  LabelClasses out;
  Index begin = 0;
  for (Index i = 1; i <= side.size(); ++i) {
    if (i == side.size() || !side.label(i).same_class(side.label(begin))) {
      out.ranges.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Eigenvalues of the partial transpose, computed block by block. Rows are
// grouped into cells (left class, right class); two cells couple only if the
// ensemble has nonzero amplitude in the class blocks that feed the element,
// so every connected component of cells is an invariant block of rho^G.
inline std::vector<double> pt_eigenvalues_blockwise(const BipartiteDensity& rho) {
  const LabelClasses lc = classify(rho.basis().left());
  const LabelClasses rc = classify(rho.basis().right());
  const std::size_t nl = lc.ranges.size();
  const std::size_t nr = rc.ranges.size();
  const std::size_t ncell = nl * nr;

  std::vector<char> nonzero(ncell, 0);
  for (const auto& m : rho.members()) {
    if (m.weight == 0.0) continue;
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b) {
        if (nonzero[a * nr + b]) continue;
        const auto [i0, i1] = lc.ranges[a];
        const auto [j0, j1] = rc.ranges[b];
        const auto blk = m.amplitudes.block(i0, j0, i1 - i0, j1 - j0);
        for (Index j = 0; j < blk.cols() && !nonzero[a * nr + b]; ++j)
          for (Index i = 0; i < blk.rows(); ++i)
            if (blk(i, j) != cplx(0.0)) {
              nonzero[a * nr + b] = 1;
              break;
            }
      }
  }
  auto nz = [&](std::size_t a, std::size_t b) { return nonzero[a * nr + b] != 0; };
  // Row cell (a,b) couples to column cell (c,d) through A(i in a, l in d) and A(k in c, j in b).
  auto couples = [&](std::size_t row_cell, std::size_t col_cell) {
    const std::size_t a = row_cell / nr, b = row_cell % nr, c = col_cell / nr, d = col_cell % nr;
    return nz(a, d) && nz(c, b);
  };

  UnionFind uf(ncell);
  for (std::size_t x = 0; x < ncell; ++x)
    for (std::size_t y = x + 1; y < ncell; ++y)
      if (couples(x, y)) uf.unite(x, y);

  std::vector<std::vector<std::size_t>> components(ncell);
  for (std::size_t x = 0; x < ncell; ++x) components[uf.find(x)].push_back(x);

  auto cell_size = [&](std::size_t cell) {
    const auto [i0, i1] = lc.ranges[cell / nr];
    const auto [j0, j1] = rc.ranges[cell % nr];
    return (i1 - i0) * (j1 - j0);
  };

  std::vector<double> eigenvalues;
  eigenvalues.reserve(static_cast<std::size_t>(rho.dim()));
  for (const auto& comp : components) {
    if (comp.empty()) continue;
    Index m = 0;
    std::vector<Index> offset;
    bool any_coupling = false;
    for (std::size_t x : comp) {
      offset.push_back(m);
      m += cell_size(x);
      for (std::size_t y : comp) any_coupling = any_coupling || couples(x, y);
    }
    if (!any_coupling) {
      eigenvalues.insert(eigenvalues.end(), static_cast<std::size_t>(m), 0.0);
      continue;
    }
    ComplexMatrix block = ComplexMatrix::Zero(m, m);
    for (std::size_t ra = 0; ra < comp.size(); ++ra) {
      const std::size_t row_cell = comp[ra];
      const auto [i0, i1] = lc.ranges[row_cell / nr];
      const auto [j0, j1] = rc.ranges[row_cell % nr];
      const Index nj = j1 - j0;
      for (std::size_t cb = 0; cb < comp.size(); ++cb) {
        const std::size_t col_cell = comp[cb];
        if (!couples(row_cell, col_cell)) continue;
        const auto [k0, k1] = lc.ranges[col_cell / nr];
        const auto [l0, l1] = rc.ranges[col_cell % nr];
        const Index nlc = l1 - l0;
        for (const auto& mem : rho.members()) {
          if (mem.weight == 0.0) continue;
          const ComplexMatrix& a = mem.amplitudes;
          for (Index i = i0; i < i1; ++i)
            for (Index j = j0; j < j1; ++j) {
              const Index r = offset[ra] + (i - i0) * nj + (j - j0);
              for (Index k = k0; k < k1; ++k) {
                const cplx akj = mem.weight * std::conj(a(k, j));
                if (akj == cplx(0.0)) continue;
                const Index s0 = offset[cb] + (k - k0) * nlc;
                for (Index l = l0; l < l1; ++l) block(r, s0 + (l - l0)) += a(i, l) * akj;
              }
            }
        }
      }
    }
    const RealVector values = eigvalsh(HermitianMatrix(std::move(block)));
    for (Index k = 0; k < values.size(); ++k) eigenvalues.push_back(values(k));
  }
  return eigenvalues;
}

}  // namespace detail

/// All dim eigenvalues of the partial transpose, descending.
inline RealVector pt_spectrum(const BipartiteDensity& rho) {
  std::vector<double> ev = detail::pt_eigenvalues_blockwise(rho);
  std::stable_sort(ev.begin(), ev.end(), std::greater<>());
  return Eigen::Map<RealVector>(ev.data(), static_cast<Index>(ev.size()));
}

/// Trace norm of the partial transpose; eigenvalues with |e| < 1e-12 count as zero.
inline double pt_trace_norm(const BipartiteDensity& rho) {
  double norm = 0.0;
  for (double e : detail::pt_eigenvalues_blockwise(rho))
    if (std::abs(e) >= kZeroThreshold) norm += std::abs(e);
  return norm;
}

/// log2 ||rho^G||_1, clamped at zero against rounding below one.
inline double log_negativity(const BipartiteDensity& rho) {
  return std::max(0.0, std::log2(pt_trace_norm(rho)));
}

inline SchmidtData schmidt_of(const BipartiteState& s) { return schmidt_decompose(s.amplitudes()); }

/// 2 log2 sum of all singular values; unlike schmidt_of nothing is dropped, so
/// a long tail of tiny coefficients still counts.
inline double log_negativity(const BipartiteState& s) {
  return std::max(0.0, 2.0 * std::log2(singular_values(s.amplitudes()).sum()));
}

inline double entropy_of_entanglement(const BipartiteState& s) {
  return shannon_entropy_bits(schmidt_of(s).lambdas);
}

}  // namespace photonent
