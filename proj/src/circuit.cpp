#include "ffd/circuit.hpp"

#include <cmath>

#include "ffd/error.hpp"

namespace ffd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::resource: return "resource";
    case ErrorCode::degeneracy: return "degeneracy";
    case ErrorCode::spectral_structure: return "spectral-structure";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "I" || text == "1") return Family::I;
  if (text == "II" || text == "2") return Family::II;
  if (text == "III" || text == "3") return Family::III;
  fail(ErrorCode::argument, "family: expected I, II or III, got '" + std::string(text) + "'");
}

bool family_accepts(Family f, int M) {
  if (M < 1) return false;
  switch (f) {
    case Family::I: return true;
    case Family::II: return M % 2 == 0;
    case Family::III: return M % 3 == 0;
  }
  return false;
}

CircuitSpec CircuitSpec::make(Family family, int M, std::vector<double> phases) {
  CircuitSpec s{family, M, std::move(phases)};
  s.validate();
  return s;
}

CircuitSpec CircuitSpec::homogeneous(Family family, int M, double phi) {
  return make(family, M, std::vector<double>(M > 0 ? M : 0, phi));
}

void CircuitSpec::validate() const {
  if (M < 1) fail(ErrorCode::argument, "M: must be at least 1, got " + std::to_string(M));
  if (!family_accepts(family, M)) {
    fail(ErrorCode::argument, "M: " + std::to_string(M) + " is incompatible with family " +
                                  std::string(to_string(family)) +
                                  (family == Family::II ? " (needs even M)" : " (needs M divisible by 3)"));
  }
  if (static_cast<int>(phases.size()) != M) {
    fail(ErrorCode::argument, "phases: expected " + std::to_string(M) + " values, got " +
                                  std::to_string(phases.size()));
  }
  for (int m = 1; m <= M; ++m) {
    double p = phases[m - 1];
    if (!std::isfinite(p)) fail(ErrorCode::argument, "phases: non-finite phi at site " + std::to_string(m));
    if (std::abs(std::cos(p)) < min_abs_x) {
      fail(ErrorCode::argument, "phases: |cos phi| below 1e-9 at site " + std::to_string(m));
    }
  }
}

double CircuitSpec::x(int m) const { return (m < 1 || m > M) ? 1.0 : std::cos(phases[m - 1]); }
double CircuitSpec::y(int m) const { return (m < 1 || m > M) ? 0.0 : std::sin(phases[m - 1]); }
double CircuitSpec::phi(int m) const { return (m < 1 || m > M) ? 0.0 : phases[m - 1]; }

std::vector<int> CircuitSpec::step_sites() const {
  std::vector<int> out;
  int stride = family == Family::I ? 1 : (family == Family::II ? 2 : 3);
  int last = family == Family::I ? M : (family == Family::II ? M - 1 : M - 2);
  for (int s = 1; s <= last; s += stride) out.push_back(s);
  return out;
}

std::vector<int> CircuitSpec::gate_order() const {
  std::vector<int> out;
  int period = family == Family::I ? 1 : (family == Family::II ? 2 : 3);
  if (period == 1) {
    for (int m = 1; m <= M; ++m) out.push_back(m);
    return out;
  }
  for (int r = period; r >= 1; --r)
    for (int m = r; m <= M; m += period) out.push_back(m);
  return out;
}

}  // namespace ffd
