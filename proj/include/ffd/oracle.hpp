#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ffd/circuit.hpp"
#include "ffd/pauli.hpp"
#include "ffd/sector.hpp"
#include "ffd/spectrum.hpp"

namespace ffd {

inline constexpr int dense_max_M = 12;

struct Check {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass() const { return residual < tolerance; }
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  void add(std::string name, double residual, double tolerance);
  bool pass() const;
  double max_residual() const;
  void merge(const Report& other);
  // Keeps one entry per check name, with the largest residual.
  void fold(const Report& other);
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

// Basis adapted to h_1..h_n and chi on n >= M sites.
BasisPtr make_basis(const CircuitSpec& spec, int num_sites, SectorBasis::Mode mode = SectorBasis::Mode::representative);

// G G^T from the individual gates.
DenseOp build_floquet(const CircuitSpec& spec, const BasisPtr& basis);

// A_m, B_m, C_m, D_m by the operator recursions. B, C and D at m = M need M + 2 sites;
// entries that would need a missing site are left empty.
struct TransferOps {
  DenseOp A, B, C, D;
  std::map<int, DenseOp> A_hist, B_hist;  // every recursion step, including m = 0
  bool has_bcd() const { return !B.blocks().empty(); }
};
TransferOps build_abcd(const CircuitSpec& spec, cplx u, const BasisPtr& basis);

// FFD relations of the generators, chi, and the gate square; exact Pauli arithmetic.
Report verify_generator_algebra(const CircuitSpec& spec);

// Commutation relations of A, B, C (and D for II, III) at (u, v); needs M + 2 sites.
Report verify_commuting_family(const CircuitSpec& spec, cplx u, cplx v, const BasisPtr& basis);

// Dense A B C D products against the scalar chains.
Report verify_scalar_chains(const CircuitSpec& spec, cplx u, const BasisPtr& basis);

struct Fermions {
  std::vector<DenseOp> plus, minus;  // Psi_k, Psi_-k for k = 1..S
  DenseOp Q;                         // zero-mode operator c0 Psi_0
  DenseOp psi0;                      // Q / c0
  double c0_squared = 0;             // scalar part of Q^2
  double q_square_residual = 0;      // off-scalar part of Q^2
  double top_degree_residual = 0;    // size of A's v-coefficients above degree S

  const DenseOp& mode(int s) const { return s > 0 ? plus[s - 1] : minus[-s - 1]; }
};
Fermions build_fermions(const CircuitSpec& spec, const SpectralData& spectral, const BasisPtr& basis);

// Canonical relations, zero-mode relations, mode-shift relation.
Report verify_fermions(const CircuitSpec& spec, const SpectralData& spectral, const Fermions& f,
                       const BasisPtr& basis, const std::vector<cplx>& probes);

// Product form of A_M(u) at the probes, and the eigenvalue multiset of the Floquet operator.
Report verify_diagonal_form(const CircuitSpec& spec, const SpectralData& spectral, const Fermions& f,
                            const BasisPtr& basis, const std::vector<cplx>& probes);

// Expansion of chi in the modes (family III).
Report verify_chi_expansion(const CircuitSpec& spec, const SpectralData& spectral, const Fermions& f);

// First conserved charge; family III is unsupported.
OperatorSum build_charge(const CircuitSpec& spec);
Report verify_charge(const CircuitSpec& spec, const BasisPtr& basis);

Report verify_mode_identities(const CircuitSpec& spec, cplx u, cplx v, const BasisPtr& basis);

// Greedy nearest pairing of two multisets; largest pair distance, or infinity on size mismatch.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace ffd
