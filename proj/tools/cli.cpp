#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <iostream>
#include <random>

#include "ffd/dynamics.hpp"
#include "ffd/error.hpp"
#include "ffd/io.hpp"
#include "ffd/oracle.hpp"

namespace ffd::cli {

namespace {

struct HelpRequested {
  std::string text;
};

double parse_number(std::string_view key, std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    fail(ErrorCode::argument, std::string(key) + ": '" + std::string(text) + "' is not a finite number");
  }
  return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_number(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_check(std::ostream& out, const std::string& suite, const Check& c) {
  out << (c.pass() ? "PASS " : "FAIL ") << suite << ": " << c.name << "  residual=" << format_double(c.residual)
      << "  tol=" << c.tolerance << '\n';
}

}  // namespace

std::vector<double> seeded_phases(std::uint64_t seed, int M) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(M > 0 ? M : 0);
  // Raw 53-bit draws keep the sequence identical across standard libraries.
  for (double& p : out) p = 0.2 + 1.1 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return out;
}

CircuitSpec RunConfig::circuit() const {
  std::vector<double> ph;
  if (!phases.empty()) {
    ph = phases;
  } else if (homogeneous) {
    ph.assign(M > 0 ? M : 0, *homogeneous);
  } else if (seed) {
    ph = seeded_phases(*seed, M);
  }
  try {
    return CircuitSpec::make(family, M, std::move(ph));
  } catch (const Error& e) {
    std::string detail = e.what();
    if (detail.rfind("phases:", 0) == 0) {
      std::string key = !phases.empty() ? "--phases" : homogeneous ? "--homogeneous" : "--seed";
      fail(e.code(), key + detail.substr(6));
    }
    if (detail.rfind("M:", 0) == 0) fail(e.code(), "--" + detail);
    throw;
  }
}

RunConfig parse(int argc, const char* const* argv) {
  CLI::App app{"Free-fermion circuit simulator", "ffd"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  RunConfig cfg;
  std::string family, phases, format, precision;
  std::vector<CLI::App*> subs;
  auto common = [&](CLI::App* s) {
    s->add_option("--family", family, "Circuit family I, II or III")->required();
    s->add_option("--M", cfg.M, "Number of qubits")->required();
    s->add_option("--phases", phases, "Comma-separated phi_1..phi_M in radians");
    s->add_option("--homogeneous", [&](const CLI::results_t& r) {
      cfg.homogeneous = parse_number("--homogeneous", r.front());
      return true;
    }, "Same phi on every gate")->type_name("FLOAT");
    s->add_option("--seed", [&](const CLI::results_t& r) {
      std::uint64_t v = 0;
      const std::string& t = r.front();
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        fail(ErrorCode::argument, "--seed: '" + t + "' is not a non-negative integer");
      }
      cfg.seed = v;
      return true;
    }, "Uniform random phases in [0.2, 1.3]")->type_name("INT");
    s->add_option("--precision", precision, "standard or extended");
    subs.push_back(s);
  };

  common(app.add_subcommand("verify", "Run the dense oracle suites (M <= 12)"));
  CLI::App* spectrum = app.add_subcommand("spectrum", "Roots, pseudoenergies and normalizations");
  common(spectrum);
  spectrum->add_option("--out", cfg.out, "JSON output path (default stdout)");
  spectrum->add_option("--format", format, "json");
  CLI::App* evolve = app.add_subcommand("evolve", "Edge-mode quench dynamics (family III)");
  common(evolve);
  evolve->add_option("--theta", cfg.theta, "Initial tilt angle in radians");
  evolve->add_option("--t-max", cfg.t_max, "Number of Floquet steps");
  evolve->add_option("--out", cfg.out, "Output path (default stdout)");
  evolve->add_option("--format", format, "csv or json");
  evolve->add_flag("--exact-check", cfg.exact_check, "Compare with state-vector evolution (M <= 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    for (CLI::App* s : subs) {
      if (s->parsed()) throw HelpRequested{s->help()};
    }
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    fail(ErrorCode::argument, msg);
  }

  for (CLI::App* s : subs) {
    if (s->parsed()) cfg.subcommand = s->get_name();
  }
  try {
    cfg.family = parse_family(family);
  } catch (const Error& e) {
    fail(e.code(), std::string("--") + e.what());
  }
  if (!phases.empty()) cfg.phases = parse_list("--phases", phases);
  int given = !phases.empty() + cfg.homogeneous.has_value() + cfg.seed.has_value();
  if (given != 1) {
    fail(ErrorCode::argument, "--phases/--homogeneous/--seed: exactly one is required, got " + std::to_string(given));
  }
  if (!precision.empty()) {
    try {
      cfg.precision = parse_precision(precision);
    } catch (const Error& e) {
      fail(ErrorCode::argument, std::string("--precision: ") + e.what());
    }
  }
  if (cfg.subcommand == "spectrum") {
    if (!format.empty() && format != "json") fail(ErrorCode::argument, "--format: spectrum output is json only");
    cfg.format = Format::json;
  } else if (!format.empty()) {
    if (format == "csv") cfg.format = Format::csv;
    else if (format == "json") cfg.format = Format::json;
    else fail(ErrorCode::argument, "--format: expected csv or json, got '" + format + "'");
  }
  if (cfg.subcommand == "evolve") {
    if (cfg.family != Family::III) fail(ErrorCode::unsupported, "--family: evolve needs family III");
    if (cfg.t_max < 0) fail(ErrorCode::argument, "--t-max: must be >= 0");
    if (!std::isfinite(cfg.theta)) fail(ErrorCode::argument, "--theta: must be finite");
    if (cfg.exact_check && cfg.M > dense_max_M) {
      fail(ErrorCode::resource, "--exact-check: needs M <= " + std::to_string(dense_max_M));
    }
  }
  if (cfg.subcommand == "verify" && cfg.M > dense_max_M) {
    fail(ErrorCode::resource, "--M: verify needs M <= " + std::to_string(dense_max_M));
  }
  cfg.circuit();
  return cfg;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const CircuitSpec spec = cfg.circuit();
  const int M = spec.M;
  std::mt19937_64 rng(cfg.seed.value_or(0) + 1);
  auto draw = [&] {
    double a = static_cast<double>(rng() >> 11) * 0x1.0p-53, b = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return cplx(2 * a - 1, 2 * b - 1);
  };

  std::vector<std::pair<std::string, Report>> suites;
  suites.emplace_back("algebra", verify_generator_algebra(spec));

  BasisPtr wide = make_basis(spec, M + 2);
  Report commuting, chains;
  for (int i = 0; i < 5; ++i) {
    cplx u = draw(), v = draw();
    commuting.fold(verify_commuting_family(spec, u, v, wide));
    chains.fold(verify_scalar_chains(spec, u, wide));
  }
  suites.emplace_back("transfer", commuting);
  suites.emplace_back("scalar", chains);

  BasisPtr basis = make_basis(spec, M);
  Report identities;
  for (int i = 0; i < 5; ++i) identities.fold(verify_mode_identities(spec, draw(), draw(), basis));
  suites.emplace_back("identities", identities);

  SpectralData sd = solve_spectrum(spec, cfg.precision);
  Report spectral;
  spectral.add("|calA_M(1) - 1|", std::abs(sd.calA_at_one_minus_one), 1e-10);
  if (spec.family == Family::I && M == 1) {
    spectral.add("u_1 = cot(phi_1)", std::abs(sd.roots[0] - 1 / std::tan(spec.phases[0])), 1e-12);
  }
  suites.emplace_back("spectrum", spectral);

  Fermions f = build_fermions(spec, sd, basis);
  std::vector<cplx> probes{draw(), draw(), draw()};
  suites.emplace_back("fermions", verify_fermions(spec, sd, f, basis, probes));
  suites.emplace_back("diagonal", verify_diagonal_form(spec, sd, f, basis, probes));
  if (spec.family == Family::III) {
    suites.emplace_back("chi", verify_chi_expansion(spec, sd, f));
  } else {
    suites.emplace_back("charge", verify_charge(spec, basis));
  }

  std::size_t total = 0, failed = 0;
  double worst = 0;
  for (const auto& [name, r] : suites) {
    for (const Check& c : r.checks) {
      print_check(out, name, c);
      ++total;
      if (!c.pass()) ++failed;
    }
    worst = std::max(worst, r.max_residual());
  }
  out << "verify family " << to_string(spec.family) << " M=" << M << " S=" << sd.S << ": " << total
      << " checks, max residual " << format_double(worst) << '\n';
  if (failed) fail(ErrorCode::consistency, std::to_string(failed) + " of " + std::to_string(total) + " checks failed");
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CircuitSpec spec = cfg.circuit();
  SpectralData sd = solve_spectrum(spec, cfg.precision);
  std::string json = to_json(sd).dump(2) + "\n";
  std::ostream& log = cfg.out.empty() ? err : out;
  log << "family " << to_string(spec.family) << " M=" << spec.M << " S=" << sd.S << " precision "
      << to_string(sd.precision) << '\n';
  log << "calA_M(1) - 1 = " << format_double(sd.calA_at_one_minus_one) << '\n';
  for (int k = 1; k <= sd.S; ++k) {
    log << "eps_" << k << " = " << format_double(sd.pseudoenergies[k - 1]) << "  u_" << k << " = "
        << format_double(sd.roots[k - 1]) << '\n';
  }
  if (cfg.out.empty()) {
    out << json;
  } else {
    write_atomic(cfg.out, json);
    log << "wrote " << cfg.out << '\n';
  }
  return 0;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CircuitSpec spec = cfg.circuit();
  QuenchConfig q = QuenchConfig::tilted(spec, cfg.theta, cfg.t_max);
  SpectralData sd = solve_spectrum(spec, cfg.precision);
  TimeSeries ts = evolve_chi(q, sd);
  std::ostream& log = cfg.out.empty() ? err : out;

  std::string data;
  if (cfg.format == Format::csv) {
    data = to_csv(ts);
  } else {
    nlohmann::json j;
    j["spectrum"] = to_json(sd);
    j["series"] = to_json(ts);
    data = j.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    out << data;
  } else {
    write_atomic(cfg.out, data);
    log << "wrote " << ts.values.size() << " steps to " << cfg.out << '\n';
  }

  if (cfg.exact_check) {
    TimeSeries ref = exact_evolution_reference(q);
    double dev = 0;
    for (std::size_t t = 0; t < ts.values.size(); ++t) dev = std::max(dev, std::abs(ts.values[t] - ref.values[t]));
    log << "exact-check max deviation " << format_double(dev) << '\n';
    if (!(dev < 1e-8)) fail(ErrorCode::consistency, "exact-check deviation " + format_double(dev) + " exceeds 1e-8");
  }
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg = parse(argc, argv);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, out, err);
    return cmd_evolve(cfg, out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const Error& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    err << "ERROR " << to_string(e.code()) << ": " << msg << '\n';
    return 2;
  } catch (const std::bad_alloc&) {
    err << "ERROR resource: out of memory\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ERROR internal: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace ffd::cli
