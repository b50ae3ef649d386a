#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffd/circuit.hpp"

namespace ffd {

using cplx = std::complex<double>;

// Bit 0 = X part, bit 1 = Z part.
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

// i^phase times a tensor product of Hermitian letters. Sites are 1-based; site m lives in bit m-1.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int num_sites);

  static PauliString from_letters(std::string_view letters, int phase = 0);
  static PauliString single(int num_sites, int site, Letter letter);

  int size() const { return n_; }
  Letter letter(int site) const;
  void set_letter(int site, Letter l);

  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = static_cast<std::uint8_t>(((p % 4) + 4) % 4); }
  PauliString with_phase(int p) const;
  cplx phase_value() const;

  bool is_identity() const;
  int weight() const;
  int lowest_site() const;   // 0 for the identity word
  int highest_site() const;  // 0 for the identity word
  int count_y() const;

  bool commutes_with(const PauliString& other) const;
  bool same_word(const PauliString& other) const { return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_; }

  const std::vector<std::uint64_t>& x_words() const { return xs_; }
  const std::vector<std::uint64_t>& z_words() const { return zs_; }
  // Low 64 sites as masks; valid only for size() <= 64.
  std::uint64_t x_mask() const { return xs_.empty() ? 0 : xs_[0]; }
  std::uint64_t z_mask() const { return zs_.empty() ? 0 : zs_[0]; }
  static PauliString from_masks(int num_sites, std::uint64_t x, std::uint64_t z, int phase = 0);

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint8_t phase_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;

  friend PauliString multiply(const PauliString& p, const PauliString& q);
};

// Orders words, ignoring phase.
struct WordLess {
  bool operator()(const PauliString& a, const PauliString& b) const;
};

PauliString multiply(const PauliString& p, const PauliString& q);
inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

// Z_{m-2} Z_{m-1} X_m, letters on sites <= 0 dropped.
PauliString make_h(int m, int M);
// Z_M (I, III) or Z_{M-1} Z_M (II).
PauliString make_chi(Family family, int M);

class OperatorSum {
 public:
  static constexpr double prune_threshold = 1e-14;
  using Map = std::map<PauliString, cplx, WordLess>;

  explicit OperatorSum(int num_sites = 0) : n_(num_sites) {}
  OperatorSum(const PauliString& p, cplx amp = 1.0);  // NOLINT
  static OperatorSum identity(int num_sites, cplx amp = 1.0);

  int size() const { return n_; }
  const Map& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Adds amp * p, folding the phase of p into the amplitude. Does not prune.
  void add(const PauliString& p, cplx amp);
  cplx coefficient(const PauliString& word) const;
  void prune();

  double norm1() const;
  OperatorSum adjoint() const;
  OperatorSum transpose() const;

  OperatorSum& operator+=(const OperatorSum& o);
  OperatorSum& operator-=(const OperatorSum& o);
  OperatorSum& operator*=(cplx a);
  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
  friend OperatorSum operator*(OperatorSum a, cplx s) { return a *= s; }
  friend OperatorSum operator*(cplx s, OperatorSum a) { return a *= s; }
  friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

  std::string to_string() const;

 private:
  int n_;
  Map terms_;
  void check_size(const OperatorSum& o) const;
};

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);
OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b);

// cos(phi/2) + i sin(phi/2) h_m.
OperatorSum make_gate(int m, double phi, int M);

class ProductState {
 public:
  using Site = std::array<cplx, 2>;
  static constexpr double norm_tolerance = 1e-12;

  ProductState() = default;
  explicit ProductState(std::vector<Site> sites);

  // cos(theta)|0> + sin(theta)|1> on every site.
  static ProductState tilted(int M, double theta);
  static ProductState zeros(int M);
  static ProductState plus(int M);

  int size() const { return static_cast<int>(sites_.size()); }
  const Site& site(int m) const { return sites_[m - 1]; }
  cplx letter_expectation(int m, Letter l) const;

  // Dense amplitudes, basis index bit m-1 = state of site m.
  std::vector<cplx> to_vector() const;

 private:
  std::vector<Site> sites_;
};

cplx expect_product(const PauliString& p, const ProductState& psi);
cplx expect_product(const OperatorSum& op, const ProductState& psi);

// out += scale * p * in, for size() <= 30.
void apply_add(const PauliString& p, std::span<const cplx> in, std::span<cplx> out, cplx scale = 1.0);
void apply_add(const OperatorSum& op, std::span<const cplx> in, std::span<cplx> out);

}  // namespace ffd
