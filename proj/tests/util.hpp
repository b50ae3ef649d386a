#pragma once

#include <random>
#include <vector>

#include "ffd/circuit.hpp"
#include "ffd/pauli.hpp"

namespace ffd::test {

inline std::vector<double> random_phases(std::mt19937_64& rng, int M) {
  std::uniform_real_distribution<double> U(0.2, 1.3);
  std::vector<double> ph(M);
  for (double& p : ph) p = U(rng);
  return ph;
}

inline CircuitSpec random_spec(std::mt19937_64& rng, Family f, int M) {
  return CircuitSpec::make(f, M, random_phases(rng, M));
}

inline cplx random_u(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  return {U(rng), U(rng)};
}

inline ProductState random_state(std::mt19937_64& rng, int M) {
  std::uniform_real_distribution<double> U(0.0, 6.283185307179586);
  std::vector<ProductState::Site> sites;
  for (int m = 0; m < M; ++m) {
    double th = U(rng) / 2, ph = U(rng);
    sites.push_back({std::cos(th), std::polar(std::sin(th), ph)});
  }
  return ProductState(sites);
}

// Sizes accepted by each family up to 12.
inline std::vector<std::pair<Family, int>> small_cases(int max_M = 12) {
  std::vector<std::pair<Family, int>> out;
  for (Family f : {Family::I, Family::II, Family::III})
    for (int M = 1; M <= max_M; ++M)
      if (family_accepts(f, M)) out.emplace_back(f, M);
  return out;
}

}  // namespace ffd::test
