#include "ffd/sector.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <Eigen/Eigenvalues>

#include "ffd/error.hpp"

namespace ffd {
namespace {

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

struct Symplectic {
  int n;
  std::uint64_t low() const { return n == 64 ? ~0ULL : ((1ULL << n) - 1); }
  std::uint64_t xs(std::uint64_t v) const { return v & low(); }
  std::uint64_t zs(std::uint64_t v) const { return (v >> n) & low(); }
  int omega(std::uint64_t a, std::uint64_t b) const {
    return parity((xs(a) & zs(b)) ^ (zs(a) & xs(b)));
  }
};

// Basis of {v : parity(v & row) = 0 for all rows}.
std::vector<std::uint64_t> nullspace(std::vector<std::uint64_t> rows, int width) {
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < width && rank < static_cast<int>(rows.size()); ++col) {
    std::uint64_t bit = 1ULL << col;
    int sel = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r] & bit) { sel = r; break; }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    pivot_col.push_back(col);
    ++rank;
  }
  std::uint64_t pivot_mask = 0;
  for (int c : pivot_col) pivot_mask |= 1ULL << c;
  std::vector<std::uint64_t> out;
  for (int f = 0; f < width; ++f) {
    if (pivot_mask & (1ULL << f)) continue;
    std::uint64_t v = 1ULL << f;
    for (int r = 0; r < rank; ++r)
      if (rows[r] & (1ULL << f)) v |= 1ULL << pivot_col[r];
    out.push_back(v);
  }
  return out;
}

}  // namespace

SectorBasis::SectorBasis(int num_sites, std::vector<PauliString> generators, Mode mode)
    : n_(num_sites), mode_(mode) {
  if (num_sites < 1 || num_sites > max_sites) {
    fail(ErrorCode::resource, "sector basis supports 1.." + std::to_string(max_sites) + " sites, got " +
                                  std::to_string(num_sites));
  }
  Symplectic sp{n_};
  std::vector<std::uint64_t> rows;
  for (const auto& g : generators) {
    if (g.size() != n_) fail(ErrorCode::argument, "generator size mismatch in sector basis");
    rows.push_back(g.z_mask() | (g.x_mask() << n_));
  }
  commutant_ = nullspace(rows, 2 * n_);

  // Symplectic Gram-Schmidt: center first, then one element of each hyperbolic pair.
  std::vector<std::uint64_t> pool = commutant_;
  std::vector<std::uint64_t> center, pair_a;
  while (!pool.empty()) {
    std::uint64_t a = pool.back();
    pool.pop_back();
    auto it = std::find_if(pool.begin(), pool.end(), [&](std::uint64_t b) { return sp.omega(a, b); });
    if (it == pool.end()) {
      center.push_back(a);
      continue;
    }
    std::uint64_t b = *it;
    pool.erase(it);
    pair_a.push_back(a);
    for (auto& c : pool) {
      std::uint64_t nc = c;
      if (sp.omega(c, b)) nc ^= a;
      if (sp.omega(c, a)) nc ^= b;
      c = nc;
    }
  }
  center_size_ = static_cast<int>(center.size());
  pair_count_ = static_cast<int>(pair_a.size());
  std::vector<std::uint64_t> label_vecs = center;
  label_vecs.insert(label_vecs.end(), pair_a.begin(), pair_a.end());
  for (auto v : label_vecs) labels_.push_back(PauliString::from_masks(n_, sp.xs(v), sp.zs(v)));

  // Reduced echelon basis of the X parts.
  for (auto v : label_vecs) {
    std::uint64_t x = sp.xs(v);
    for (std::size_t t = 0; t < span_vecs_.size(); ++t)
      if (x >> pivots_[t] & 1U) x ^= span_vecs_[t];
    if (!x) continue;
    int p = std::countr_zero(x);
    for (auto& s : span_vecs_)
      if (s >> p & 1U) s ^= x;
    span_vecs_.push_back(x);
    pivots_.push_back(p);
  }

  const std::size_t L = orbit_size();
  const int r = static_cast<int>(labels_.size());
  std::vector<std::uint64_t> label_xidx(r);
  std::vector<cplx> label_phase(r);
  for (int i = 0; i < r; ++i) {
    label_xidx[i] = orbit_index(labels_[i].x_mask());
    label_phase[i] = kIPow[std::popcount(labels_[i].x_mask() & labels_[i].z_mask()) % 4];
  }
  std::uint64_t pair_bits = 0;
  for (int i = center_size_; i < r; ++i) pair_bits |= 1ULL << i;

  std::map<std::uint64_t, Block> by_pattern;
  std::vector<std::uint64_t> elem(L);
  for (std::uint64_t j = 0; j < dim(); ++j) {
    if (reduce(j) != j) continue;
    for (std::size_t idx = 0; idx < L; ++idx) elem[idx] = orbit_element(j, idx);
    std::vector<std::pair<std::uint64_t, std::vector<cplx>>> branches;
    std::vector<cplx> start(L, 0.0);
    start[0] = 1.0;
    branches.emplace_back(0, std::move(start));
    for (int i = 0; i < r; ++i) {
      std::vector<std::pair<std::uint64_t, std::vector<cplx>>> next;
      std::uint64_t z = labels_[i].z_mask();
      for (auto& [pat, v] : branches) {
        std::vector<cplx> w(L, 0.0);
        for (std::size_t idx = 0; idx < L; ++idx) {
          if (v[idx] == 0.0) continue;
          cplx a = v[idx] * label_phase[i];
          w[idx ^ label_xidx[i]] += parity(z & elem[idx]) ? -a : a;
        }
        for (int sgn = 0; sgn < 2; ++sgn) {
          if (mode_ == Mode::representative && sgn == 1 && (pair_bits >> i & 1U)) continue;
          std::vector<cplx> p(L);
          double nrm = 0;
          for (std::size_t idx = 0; idx < L; ++idx) {
            p[idx] = 0.5 * (sgn ? v[idx] - w[idx] : v[idx] + w[idx]);
            nrm += std::norm(p[idx]);
          }
          if (nrm > 1e-20) next.emplace_back(pat | (std::uint64_t(sgn) << i), std::move(p));
        }
      }
      branches = std::move(next);
    }
    for (auto& [pat, v] : branches) {
      double nrm = 0;
      for (auto c : v) nrm += std::norm(c);
      nrm = std::sqrt(nrm);
      for (auto& c : v) c /= nrm;
      Block& blk = by_pattern[pat];
      blk.pattern = pat;
      blk.position.emplace(j, static_cast<int>(blk.reps.size()));
      blk.reps.push_back(j);
      blk.vecs.push_back(std::move(v));
    }
  }
  std::size_t mult = mode_ == Mode::representative ? (std::size_t{1} << pair_count_) : 1;
  for (auto& [pat, blk] : by_pattern) {
    blk.multiplicity = mult;
    blocks_.push_back(std::move(blk));
  }
}

std::uint64_t SectorBasis::reduce(std::uint64_t j) const {
  for (std::size_t t = 0; t < span_vecs_.size(); ++t)
    if (j >> pivots_[t] & 1U) j ^= span_vecs_[t];
  return j;
}

std::uint64_t SectorBasis::orbit_index(std::uint64_t k) const {
  std::uint64_t idx = 0;
  for (std::size_t t = 0; t < pivots_.size(); ++t) idx |= (k >> pivots_[t] & 1U) << t;
  return idx;
}

std::uint64_t SectorBasis::orbit_element(std::uint64_t rep, std::uint64_t idx) const {
  for (std::size_t t = 0; t < span_vecs_.size(); ++t)
    if (idx >> t & 1U) rep ^= span_vecs_[t];
  return rep;
}

bool SectorBasis::admits(const PauliString& p) const {
  if (p.size() != n_) return false;
  if (mode_ == Mode::full) {
    return std::all_of(labels_.begin(), labels_.end(), [&](const PauliString& l) { return l.commutes_with(p); });
  }
  Symplectic sp{n_};
  std::uint64_t v = p.x_mask() | (p.z_mask() << n_);
  return std::none_of(commutant_.begin(), commutant_.end(), [&](std::uint64_t c) { return sp.omega(c, v); });
}

std::vector<SectorBasis::Monomial> SectorBasis::monomial(const PauliString& p) const {
  if (!admits(p)) {
    fail(ErrorCode::argument, "Pauli string " + p.to_string() + " is not block diagonal in this sector basis");
  }
  const std::uint64_t px = p.x_mask();
  const std::uint64_t pz = p.z_mask();
  const std::uint64_t pidx = orbit_index(px);
  const cplx ph = kIPow[(p.phase() + std::popcount(px & pz)) % 4];
  const std::size_t L = orbit_size();
  std::vector<Monomial> out(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& blk = blocks_[b];
    Monomial& mono = out[b];
    std::size_t d = blk.reps.size();
    mono.target.resize(d);
    mono.coeff.resize(d);
    for (std::size_t t = 0; t < d; ++t) {
      std::uint64_t rep = blk.reps[t];
      std::uint64_t rep2 = reduce(rep ^ px);
      auto it = blk.position.find(rep2);
      if (it == blk.position.end()) fail(ErrorCode::consistency, "Pauli string leaves its sector block");
      const auto& e = blk.vecs[t];
      const auto& e2 = blk.vecs[it->second];
      cplx c = 0;
      for (std::size_t idx = 0; idx < L; ++idx) {
        if (e[idx] == 0.0) continue;
        std::uint64_t k = orbit_element(rep, idx);
        cplx a = e[idx] * ph;
        c += std::conj(e2[idx ^ pidx]) * (parity(pz & k) ? -a : a);
      }
      mono.target[t] = it->second;
      mono.coeff[t] = c;
    }
  }
  return out;
}

std::vector<Eigen::VectorXcd> SectorBasis::coordinates(std::span<const cplx> psi) const {
  if (mode_ != Mode::full) fail(ErrorCode::argument, "state coordinates need a full sector basis");
  if (psi.size() != dim()) fail(ErrorCode::argument, "state dimension mismatch");
  std::vector<Eigen::VectorXcd> out(blocks_.size());
  const std::size_t L = orbit_size();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& blk = blocks_[b];
    out[b].resize(blk.reps.size());
    for (std::size_t t = 0; t < blk.reps.size(); ++t) {
      cplx c = 0;
      for (std::size_t idx = 0; idx < L; ++idx) c += std::conj(blk.vecs[t][idx]) * psi[orbit_element(blk.reps[t], idx)];
      out[b][t] = c;
    }
  }
  return out;
}

Eigen::MatrixXcd SectorBasis::block_isometry(int b) const {
  const Block& blk = blocks_[b];
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(dim(), blk.reps.size());
  for (std::size_t t = 0; t < blk.reps.size(); ++t)
    for (std::size_t idx = 0; idx < orbit_size(); ++idx) E(orbit_element(blk.reps[t], idx), t) = blk.vecs[t][idx];
  return E;
}

DenseOp::DenseOp(std::shared_ptr<const SectorBasis> basis, cplx scalar) : basis_(std::move(basis)) {
  blocks_.resize(basis_->block_count());
  for (int b = 0; b < basis_->block_count(); ++b) {
    int d = basis_->block_dim(b);
    blocks_[b] = Eigen::MatrixXcd::Identity(d, d) * scalar;
  }
}

DenseOp DenseOp::pauli(std::shared_ptr<const SectorBasis> basis, const PauliString& p, cplx amp) {
  DenseOp r(basis);
  auto mono = basis->monomial(p);
  for (std::size_t b = 0; b < mono.size(); ++b)
    for (std::size_t t = 0; t < mono[b].target.size(); ++t) r.blocks_[b](mono[b].target[t], t) = amp * mono[b].coeff[t];
  return r;
}

DenseOp DenseOp::from_sum(std::shared_ptr<const SectorBasis> basis, const OperatorSum& op) {
  DenseOp r(basis);
  for (const auto& [p, a] : op.terms()) r += pauli(basis, p, a);
  return r;
}

void DenseOp::check_basis(const DenseOp& o) const {
  if (basis_ != o.basis_) fail(ErrorCode::argument, "dense operators live in different sector bases");
}

DenseOp& DenseOp::operator+=(const DenseOp& o) {
  check_basis(o);
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += o.blocks_[b];
  return *this;
}

DenseOp& DenseOp::operator-=(const DenseOp& o) {
  check_basis(o);
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= o.blocks_[b];
  return *this;
}

DenseOp& DenseOp::operator*=(cplx s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

DenseOp operator*(const DenseOp& a, const DenseOp& b) {
  a.check_basis(b);
  DenseOp r = a;
  for (std::size_t k = 0; k < r.blocks_.size(); ++k) r.blocks_[k].noalias() = a.blocks_[k] * b.blocks_[k];
  return r;
}

DenseOp DenseOp::adjoint() const {
  DenseOp r = *this;
  for (auto& m : r.blocks_) m.adjointInPlace();
  return r;
}

DenseOp DenseOp::times_pauli(const PauliString& p, cplx amp) const {
  auto mono = basis_->monomial(p);
  DenseOp r = *this;
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (std::size_t t = 0; t < mono[b].target.size(); ++t)
      r.blocks_[b].col(t) = (amp * mono[b].coeff[t]) * blocks_[b].col(mono[b].target[t]);
  return r;
}

DenseOp DenseOp::pauli_times(const PauliString& p, cplx amp) const {
  auto mono = basis_->monomial(p);
  DenseOp r = *this;
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (std::size_t t = 0; t < mono[b].target.size(); ++t)
      r.blocks_[b].row(mono[b].target[t]) = (amp * mono[b].coeff[t]) * blocks_[b].row(t);
  return r;
}

DenseOp DenseOp::times(const OperatorSum& op) const {
  DenseOp r(basis_);
  for (const auto& [p, a] : op.terms()) r += times_pauli(p, a);
  return r;
}

double DenseOp::norm() const {
  double m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.norm());
  return m;
}

cplx DenseOp::scalar_part() const {
  cplx tr = 0;
  double d = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    double mult = static_cast<double>(basis_->multiplicity(static_cast<int>(b)));
    tr += mult * blocks_[b].trace();
    d += mult * static_cast<double>(blocks_[b].rows());
  }
  return tr / d;
}

double DenseOp::off_scalar_norm() const {
  DenseOp r = *this - DenseOp(basis_, scalar_part());
  return r.norm();
}

std::vector<cplx> DenseOp::eigenvalues() const {
  std::vector<cplx> out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(blocks_[b], false);
    if (es.info() != Eigen::Success) fail(ErrorCode::consistency, "block eigensolver failed");
    std::size_t mult = basis_->multiplicity(static_cast<int>(b));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      for (std::size_t k = 0; k < mult; ++k) out.push_back(es.eigenvalues()[i]);
  }
  return out;
}

Eigen::MatrixXcd DenseOp::to_matrix() const {
  if (basis_->mode() != SectorBasis::Mode::full) fail(ErrorCode::argument, "to_matrix needs a full sector basis");
  if (basis_->num_sites() > 12) fail(ErrorCode::resource, "to_matrix limited to 12 sites");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis_->dim(), basis_->dim());
  for (int b = 0; b < basis_->block_count(); ++b) {
    Eigen::MatrixXcd E = basis_->block_isometry(b);
    out += E * blocks_[b] * E.adjoint();
  }
  return out;
}

cplx DenseOp::expectation(std::span<const cplx> psi) const {
  auto coords = basis_->coordinates(psi);
  cplx r = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) r += coords[b].dot(blocks_[b] * coords[b]);
  return r;
}

DenseOp commutator(const DenseOp& a, const DenseOp& b) { return a * b - b * a; }
DenseOp anticommutator(const DenseOp& a, const DenseOp& b) { return a * b + b * a; }

Eigen::MatrixXcd kron_matrix(const PauliString& p) {
  if (p.size() > 12) fail(ErrorCode::resource, "Kronecker matrices limited to 12 sites");
  Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd X, Y, Z;
  X << 0, 1, 1, 0;
  Y << 0, cplx(0, -1), cplx(0, 1), 0;
  Z << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1) * p.phase_value();
  // Site m is bit m-1, so the highest site is the most significant Kronecker factor.
  for (int m = p.size(); m >= 1; --m) {
    const Eigen::Matrix2cd* f = &I;
    switch (p.letter(m)) {
      case Letter::X: f = &X; break;
      case Letter::Y: f = &Y; break;
      case Letter::Z: f = &Z; break;
      default: break;
    }
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block<2, 2>(2 * i, 2 * j) = out(i, j) * *f;
    out = std::move(next);
  }
  return out;
}

Eigen::MatrixXcd kron_matrix(const OperatorSum& op) {
  std::size_t d = std::size_t{1} << op.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [p, a] : op.terms()) out += a * kron_matrix(p);
  return out;
}

}  // namespace ffd
