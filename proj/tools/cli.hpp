#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ffd/circuit.hpp"
#include "ffd/spectrum.hpp"

namespace ffd::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string subcommand;
  Family family = Family::III;
  int M = 0;
  std::vector<double> phases;
  std::optional<double> homogeneous;
  std::optional<std::uint64_t> seed;
  double theta = 0.39269908169872414;  // pi/8
  int t_max = 70;
  std::string out;  // empty: data to stdout
  Format format = Format::csv;
  Precision precision = Precision::standard;
  bool exact_check = false;

  // Phases from whichever of --phases, --homogeneous, --seed was given.
  CircuitSpec circuit() const;
};

// Parses and validates; throws ffd::Error naming the offending key.
RunConfig parse(int argc, const char* const* argv);

// i.i.d. uniform phases in [0.2, 1.3].
std::vector<double> seeded_phases(std::uint64_t seed, int M);

int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full front end: parse, dispatch, and map every failure to one "ERROR <code>: <detail>" line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffd::cli
