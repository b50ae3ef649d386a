#include "ffd/dynamics.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "ffd/error.hpp"
#include "ffd/mpo.hpp"
#include "ffd/oracle.hpp"
#include "ffd/parallel.hpp"

namespace ffd {

namespace {

constexpr double realness_tol = 1e-9;
constexpr double offset_tol = 1e-8;
constexpr double bound_tol = 1e-9;

}  // namespace

QuenchConfig QuenchConfig::tilted(const CircuitSpec& spec, double theta, int t_max) {
  if (!std::isfinite(theta)) fail(ErrorCode::argument, "theta must be finite");
  QuenchConfig c{spec, ProductState::tilted(spec.M, theta), t_max};
  c.validate();
  return c;
}

void QuenchConfig::validate() const {
  spec.validate();
  if (t_max < 0) fail(ErrorCode::argument, "t-max must be >= 0, got " + std::to_string(t_max));
  if (psi0.size() != spec.M) fail(ErrorCode::argument, "initial state has the wrong number of sites");
}

std::string spec_hash(const CircuitSpec& spec) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(spec.family));
  mix(static_cast<std::uint64_t>(spec.M));
  for (double p : spec.phases) mix(std::bit_cast<std::uint64_t>(p));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ModeWeights mode_weights(const QuenchConfig& config, const SpectralData& spectral) {
  config.validate();
  if (config.spec.family != Family::III) {
    fail(ErrorCode::unsupported, "chi dynamics needs the expansion coefficients of family III");
  }
  const int S = spectral.S;
  ModeWeights w;
  for (int s = -S; s <= S; ++s) {
    if (s != 0) w.index.push_back(s);
  }
  w.expectation.resize(w.index.size());
  w.weight.resize(w.index.size());
  parallel_for(static_cast<int>(w.index.size()), [&](int i) {
    const int s = w.index[i];
    w.expectation[i] = mode_expectation(config.spec, s, config.psi0, spectral);
    w.weight[i] = spectral.c(s) * w.expectation[i];
  });
  return w;
}

double zero_mode_offset(const QuenchConfig& config, const ModeWeights& modes) {
  cplx sum = 0;
  for (cplx z : modes.weight) sum += z;
  cplx off = expect_product(make_chi(config.spec.family, config.spec.M), config.psi0) - sum;
  if (std::abs(off.imag()) > offset_tol) {
    fail(ErrorCode::consistency, "zero-mode offset has imaginary part " + std::to_string(off.imag()));
  }
  return off.real();
}

TimeSeries evolve_chi(const QuenchConfig& config, const SpectralData& spectral) {
  ModeWeights modes = mode_weights(config, spectral);
  TimeSeries ts;
  ts.method = "fermionic";
  ts.precision = spectral.precision;
  ts.spec_hash = spec_hash(config.spec);
  ts.zero_mode_offset = zero_mode_offset(config, modes);
  for (int t = 0; t <= config.t_max; ++t) {
    cplx v = ts.zero_mode_offset;
    for (std::size_t i = 0; i < modes.weight.size(); ++i) {
      v += modes.weight[i] * time_coefficient(1.0, spectral.u(modes.index[i]), t);
    }
    const double imag_tol = realness_tol * std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) > imag_tol) {
      fail(ErrorCode::consistency, "<chi(" + std::to_string(t) + ")> has imaginary part " + std::to_string(v.imag()));
    }
    if (std::abs(v.real()) > 1 + bound_tol) {
      fail(ErrorCode::consistency, "<chi(" + std::to_string(t) + ")> = " + std::to_string(v.real()) + " outside [-1, 1]");
    }
    ts.max_imag = std::max(ts.max_imag, std::abs(v.imag()));
    ts.values.push_back(v.real());
  }
  return ts;
}

TimeSeries evolve_chi(const QuenchConfig& config, Precision precision) {
  config.validate();
  if (config.spec.family != Family::III) {
    fail(ErrorCode::unsupported, "chi dynamics needs the expansion coefficients of family III");
  }
  return evolve_chi(config, solve_spectrum(config.spec, precision));
}

TimeSeries exact_evolution_reference(const QuenchConfig& config) {
  config.validate();
  if (config.spec.M > dense_max_M) {
    fail(ErrorCode::resource, "exact evolution needs M <= " + std::to_string(dense_max_M));
  }
  TimeSeries ts;
  ts.method = "exact";
  ts.spec_hash = spec_hash(config.spec);
  const PauliString chi = make_chi(config.spec.family, config.spec.M);
  std::vector<cplx> psi = config.psi0.to_vector(), tmp(psi.size());
  for (int t = 0; t <= config.t_max; ++t) {
    std::fill(tmp.begin(), tmp.end(), cplx(0));
    apply_add(chi, psi, tmp);
    cplx v = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) v += std::conj(psi[i]) * tmp[i];
    ts.max_imag = std::max(ts.max_imag, std::abs(v.imag()));
    ts.values.push_back(v.real());
    if (t < config.t_max) psi = floquet_apply(config.spec, psi);
  }
  return ts;
}

}  // namespace ffd
