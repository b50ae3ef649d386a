#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffd/circuit.hpp"
#include "ffd/pauli.hpp"
#include "ffd/spectrum.hpp"

namespace ffd {

struct QuenchConfig {
  CircuitSpec spec;
  ProductState psi0;
  int t_max = 0;

  // cos(theta)|0> + sin(theta)|1> on every site.
  static QuenchConfig tilted(const CircuitSpec& spec, double theta, int t_max);
  void validate() const;
};

struct TimeSeries {
  std::vector<double> values;  // t = 0..t_max
  double zero_mode_offset = 0;
  double max_imag = 0;         // largest imaginary part dropped by the realness projection
  std::string spec_hash;
  std::string method;          // "fermionic" or "exact"
  Precision precision = Precision::standard;
};

// c_s <Psi_s> for s = -S..-1, 1..S.
struct ModeWeights {
  std::vector<int> index;
  std::vector<cplx> expectation;  // <Psi_s>
  std::vector<cplx> weight;       // c_s <Psi_s>
};
ModeWeights mode_weights(const QuenchConfig& config, const SpectralData& spectral);

// c0 <Psi_0> = <chi> - sum_s c_s <Psi_s>.
double zero_mode_offset(const QuenchConfig& config, const ModeWeights& modes);

TimeSeries evolve_chi(const QuenchConfig& config, const SpectralData& spectral);
TimeSeries evolve_chi(const QuenchConfig& config, Precision precision = Precision::standard);

// State-vector evolution, M <= 12.
TimeSeries exact_evolution_reference(const QuenchConfig& config);

// Stable 64-bit FNV-1a hash of family, M and the phase bit patterns, as 16 hex digits.
std::string spec_hash(const CircuitSpec& spec);

}  // namespace ffd
