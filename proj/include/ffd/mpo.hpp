#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ffd/circuit.hpp"
#include "ffd/ddouble.hpp"
#include "ffd/pauli.hpp"
#include "ffd/poly.hpp"
#include "ffd/spectrum.hpp"

namespace ffd {

enum class Selector { a, b, c, d };
Selector parse_selector(char c);

template <class T>
struct Term {
  PauliString op;  // carries its own i^k phase
  Cx<T> amp;
};

// One ancilla step: Omega = diag(row) * mat.
template <class T>
struct OmegaStep {
  int site = 0;
  std::vector<Term<T>> row;                           // row[a]
  std::vector<std::vector<std::vector<Term<T>>>> mat;  // mat[a][b], empty = 0
};

// (1 ... 1) Omega_{s_1} ... Omega_{s_K} |sel> trailing.
template <class T>
struct OmegaChainT {
  Family family = Family::I;
  int M = 0;
  int num_sites = 0;
  int D = 3;
  Cx<T> u;
  Selector selector = Selector::a;
  std::vector<OmegaStep<T>> steps;
  Term<T> trailing;
};
using OmegaChain = OmegaChainT<double>;

// num_sites = 0 picks M for selector a and M + 2 otherwise.
template <class T>
OmegaChainT<T> build_omega_chain_t(const CircuitSpec& spec, Cx<T> u, Selector sel, int num_sites = 0);
OmegaChain build_omega_chain(const CircuitSpec& spec, cplx u, Selector sel, int num_sites = 0);

// Direct operator evaluation of the chain (small sizes).
OperatorSum evaluate(const OmegaChain& chain);

// Site-local MPO: every transition carries one Pauli letter on its site.
template <class T>
struct LocalMpoT {
  struct Transition {
    int l, r;
    Letter letter;
    Cx<T> amp;
  };
  struct Site {
    int left_dim = 1;
    int right_dim = 1;
    std::vector<Transition> trans;
  };
  std::vector<Site> sites;

  int num_sites() const { return static_cast<int>(sites.size()); }
  int max_bond() const {
    int b = 1;
    for (const auto& s : sites) b = std::max(b, s.right_dim);
    return b;
  }
};
using LocalMpo = LocalMpoT<double>;

template <class T>
LocalMpoT<T> localize(const OmegaChainT<T>& chain);

OperatorSum evaluate(const LocalMpo& mpo);

// <psi| L mid R |psi> by one left-to-right sweep over the joint bond.
template <class T>
Scaled<Cx<T>> sandwich(const LocalMpoT<T>& L, const PauliString& mid, const LocalMpoT<T>& R, const ProductState& psi);

// <psi| A_M(i u_s) chi A_M(-i u_s) |psi>, in the spectral data's working precision.
BigCx mode_numerator(const CircuitSpec& spec, int s, const ProductState& psi, const SpectralData& spectral);
// <psi| Psi_s |psi> = mode_numerator / N_s.
cplx mode_expectation(const CircuitSpec& spec, int s, const ProductState& psi, const SpectralData& spectral);

// V |psi> gate by gate.
std::vector<cplx> floquet_apply(const CircuitSpec& spec, std::span<const cplx> psi);

}  // namespace ffd
