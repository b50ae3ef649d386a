#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "ffd/pauli.hpp"

namespace ffd {

// Orthonormal basis adapted to the algebra generated by a set of Pauli strings.
// The commutant of the generators is a Pauli group; a maximal commuting subset of it
// (its center plus one element per symplectic pair) labels the blocks. Every operator
// of the generated algebra is block diagonal and every Pauli string in it is monomial.
//
// In representative mode only one block per center character is kept, together with
// its multiplicity; this is exact for operators inside the generated algebra.
class SectorBasis {
 public:
  enum class Mode { full, representative };
  static constexpr int max_sites = 20;

  SectorBasis(int num_sites, std::vector<PauliString> generators, Mode mode);

  int num_sites() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  Mode mode() const { return mode_; }

  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_dim(int b) const { return static_cast<int>(blocks_[b].reps.size()); }
  std::size_t multiplicity(int b) const { return blocks_[b].multiplicity; }

  int center_size() const { return center_size_; }
  int pair_count() const { return pair_count_; }
  const std::vector<PauliString>& commuting_set() const { return labels_; }

  // True when p can be represented on the kept blocks.
  bool admits(const PauliString& p) const;

  // p acting on block b: column t maps to coeff[t] times basis vector target[t].
  struct Monomial {
    std::vector<int> target;
    std::vector<cplx> coeff;
  };
  std::vector<Monomial> monomial(const PauliString& p) const;

  // Block coordinates of a dense state (full mode only).
  std::vector<Eigen::VectorXcd> coordinates(std::span<const cplx> psi) const;
  // Columns are the basis vectors of block b in the computational basis.
  Eigen::MatrixXcd block_isometry(int b) const;

 private:
  struct Block {
    std::uint64_t pattern = 0;
    std::size_t multiplicity = 1;
    std::vector<std::uint64_t> reps;
    std::vector<std::vector<cplx>> vecs;  // indexed by position within the orbit
    std::unordered_map<std::uint64_t, int> position;
  };

  int n_;
  Mode mode_;
  int center_size_ = 0;
  int pair_count_ = 0;
  std::vector<std::uint64_t> commutant_;  // symplectic vectors x | z << n
  std::vector<PauliString> labels_;
  std::vector<std::uint64_t> span_vecs_;  // reduced echelon basis of the label X parts
  std::vector<int> pivots_;
  std::vector<Block> blocks_;

  std::uint64_t reduce(std::uint64_t j) const;
  std::uint64_t orbit_index(std::uint64_t k) const;
  std::uint64_t orbit_element(std::uint64_t rep, std::uint64_t idx) const;
  std::size_t orbit_size() const { return std::size_t{1} << span_vecs_.size(); }
};

// Operator stored block by block in a SectorBasis.
class DenseOp {
 public:
  DenseOp() = default;
  explicit DenseOp(std::shared_ptr<const SectorBasis> basis, cplx scalar = 0.0);

  static DenseOp pauli(std::shared_ptr<const SectorBasis> basis, const PauliString& p, cplx amp = 1.0);
  static DenseOp from_sum(std::shared_ptr<const SectorBasis> basis, const OperatorSum& op);

  const SectorBasis& basis() const { return *basis_; }
  const std::shared_ptr<const SectorBasis>& basis_ptr() const { return basis_; }
  std::vector<Eigen::MatrixXcd>& blocks() { return blocks_; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }

  DenseOp& operator+=(const DenseOp& o);
  DenseOp& operator-=(const DenseOp& o);
  DenseOp& operator*=(cplx s);
  friend DenseOp operator+(DenseOp a, const DenseOp& b) { return a += b; }
  friend DenseOp operator-(DenseOp a, const DenseOp& b) { return a -= b; }
  friend DenseOp operator*(DenseOp a, cplx s) { return a *= s; }
  friend DenseOp operator*(cplx s, DenseOp a) { return a *= s; }
  friend DenseOp operator*(const DenseOp& a, const DenseOp& b);

  DenseOp adjoint() const;

  // this * (amp p) and (amp p) * this.
  DenseOp times_pauli(const PauliString& p, cplx amp = 1.0) const;
  DenseOp pauli_times(const PauliString& p, cplx amp = 1.0) const;
  DenseOp times(const OperatorSum& op) const;

  // Largest block Frobenius norm; bounds the operator norm from above.
  double norm() const;
  cplx scalar_part() const;
  double off_scalar_norm() const;

  // All eigenvalues, repeated according to block multiplicity.
  std::vector<cplx> eigenvalues() const;

  Eigen::MatrixXcd to_matrix() const;
  cplx expectation(std::span<const cplx> psi) const;

 private:
  std::shared_ptr<const SectorBasis> basis_;
  std::vector<Eigen::MatrixXcd> blocks_;
  void check_basis(const DenseOp& o) const;
};

DenseOp commutator(const DenseOp& a, const DenseOp& b);
DenseOp anticommutator(const DenseOp& a, const DenseOp& b);

// Computational-basis matrix of a Pauli string from explicit Kronecker products.
Eigen::MatrixXcd kron_matrix(const PauliString& p);
Eigen::MatrixXcd kron_matrix(const OperatorSum& op);

}  // namespace ffd
