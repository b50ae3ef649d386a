#pragma once

#include <complex>
#include <map>
#include <string_view>
#include <vector>

#include "ffd/circuit.hpp"
#include "ffd/ddouble.hpp"
#include "ffd/poly.hpp"

namespace ffd {

enum class Precision { standard, extended };
std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

// Gate parameters in working precision; in double-double, x^2 + y^2 = 1 is restored to full precision.
template <class T>
struct Params {
  std::vector<T> xv, yv;
  T x(int m) const { return (m < 1 || m > static_cast<int>(xv.size())) ? T(1.0) : xv[m - 1]; }
  T y(int m) const { return (m < 1 || m > static_cast<int>(yv.size())) ? T(0.0) : yv[m - 1]; }
};
template <class T>
Params<T> circuit_params(const CircuitSpec& spec);
template <>
Params<double> circuit_params<double>(const CircuitSpec& spec);
template <>
Params<DDouble> circuit_params<DDouble>(const CircuitSpec& spec);

// Scalar chains: calA_m at every chain site (including m = 0), and the final calB, calC, calD.
template <class T>
struct Chain {
  std::map<int, Poly<T>> A;
  Poly<T> B, C, D;
};
template <class T>
Chain<T> build_chain(const CircuitSpec& spec);

struct ScalarChains {
  Precision precision = Precision::standard;
  PolyU2 A, B, C, D;  // D is empty for family I
  std::map<int, PolyU2> A_history;
  double calA_at_one_minus_one = 0;
};
// Builds the chains, escalating to double-double when calA_M(1) misses 1 by more than 1e-8.
ScalarChains build_calA(const CircuitSpec& spec, Precision precision = Precision::standard, bool escalate = true);

template <class T>
struct Roots {
  std::vector<T> w;  // ascending u order: w_k = -u_k^2
  std::vector<T> u;  // ascending
  double max_backward_error = 0;
  double max_condition = 0;
};
// calA_M, its w-derivative and the previous chain step at a point, from the recursion itself
// (no coefficient expansion). Entries are rescaled by powers of two at every step.
template <class T>
struct ChainPoint {
  Scaled<Cx<T>> value, derivative, lower;
  double lower_sensitivity = 0;  // |z lower' / lower|
  Cx<T> ratio;  // value / derivative
};
template <class T>
ChainPoint<T> evaluate_chain(const CircuitSpec& spec, const Params<T>& P, const Cx<T>& z);

// Balanced companion seeds, Aberth refinement in T, final Newton step.
template <class T>
Roots<T> find_roots_t(const Poly<T>& p);
std::vector<double> find_roots(const PolyU2& p);

struct SpectralData {
  Family family = Family::I;
  int M = 0;
  std::vector<double> phases;
  Precision precision = Precision::standard;
  int S = 0;

  std::vector<DDouble> roots_ext;  // u_k at working precision
  std::vector<double> roots;
  std::vector<double> pseudoenergies;
  std::vector<BigCx> norms;           // N_k, principal branch; shared by +k and -k
  std::vector<BigReal> dcalA;         // dP/dw of calA_M at w_k
  std::vector<BigReal> lower_values;  // lower chain polynomial at w_k
  std::vector<double> lower_sensitivity;  // |w d/dw log| of the lower chain value at w_k
  std::vector<std::complex<double>> coefficients;  // c_k (family III); c_{-k} = c_k
  double c0 = 0;
  double c0_squared = 0;

  double calA_at_one_minus_one = 0;
  double max_backward_error = 0;
  double max_condition = 0;   // componentwise, coefficient basis
  double max_root_error = 0;  // relative size of a further extended-precision Newton step

  Poly<DDouble> calA;        // calA_M
  Poly<DDouble> calA_lower;  // calA_{M-1}, calA_{M-2} or calA_{M-3}
  int lower_index = 0;

  double u(int s) const { return s > 0 ? roots[s - 1] : -roots[-s - 1]; }
  DDouble u_ext(int s) const { return s > 0 ? roots_ext[s - 1] : -roots_ext[-s - 1]; }
  const BigCx& norm(int s) const { return norms[std::abs(s) - 1]; }
  std::complex<double> c(int s) const { return coefficients[std::abs(s) - 1]; }
};

SpectralData solve_spectrum(const CircuitSpec& spec, Precision precision = Precision::standard,
                            bool escalate = true);

// Fills norms (all families) from roots and the lower chain polynomial.
void normalizations(const CircuitSpec& spec, SpectralData& data);
// Fills coefficients and c0 (family III).
void coefficients_III(const CircuitSpec& spec, SpectralData& data);

// c (iu-1)^t / (iu+1)^t for the signed root u of mode s.
std::complex<double> time_coefficient(std::complex<double> c, double u, int t);

}  // namespace ffd
