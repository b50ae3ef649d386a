#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ffd {

enum class Family { I, II, III };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

// Number of fermionic modes, floor((M+2)/3).
inline int mode_count(int M) { return (M + 2) / 3; }

// Ancilla dimension of the transfer-matrix chain.
inline int ancilla_dim(Family f) { return f == Family::I ? 3 : 4; }

bool family_accepts(Family f, int M);

struct CircuitSpec {
  Family family = Family::I;
  int M = 0;
  std::vector<double> phases;  // phi_1..phi_M

  static constexpr double min_abs_x = 1e-9;

  // Throws argument errors on incompatible M, wrong phase count or |cos phi| < min_abs_x.
  static CircuitSpec make(Family family, int M, std::vector<double> phases);
  static CircuitSpec homogeneous(Family family, int M, double phi);

  void validate() const;

  // x_m = cos phi_m, y_m = sin phi_m; sites outside 1..M give x = 1, y = 0.
  double x(int m) const;
  double y(int m) const;
  double phi(int m) const;

  // First site of each ancilla step: 1..M (I), 1,3,..,M-1 (II), 1,4,..,M-2 (III).
  std::vector<int> step_sites() const;

  // Gate indices of G_M read left to right; V = G G^T.
  std::vector<int> gate_order() const;
};

}  // namespace ffd
