#include "ffd/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "ffd/error.hpp"

namespace ffd {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) fail(ErrorCode::io, "number formatting failed");
  return std::string(buf.data(), end);
}

nlohmann::json to_json(const SpectralData& d) {
  nlohmann::json j;
  j["family"] = std::string(to_string(d.family));
  j["M"] = d.M;
  j["phases"] = d.phases;
  j["precision"] = std::string(to_string(d.precision));
  j["S"] = d.S;
  j["roots"] = d.roots;
  j["pseudoenergies"] = d.pseudoenergies;
  nlohmann::json norms = nlohmann::json::array();
  for (const auto& n : d.norms) norms.push_back({{"log_abs", n.log_abs()}, {"arg", std::arg(n.m)}});
  j["normalizations"] = norms;
  if (d.family == Family::III && !d.coefficients.empty()) {
    std::vector<int> index;
    std::vector<double> re, im;
    for (int s = -d.S; s <= d.S; ++s) {
      if (s == 0) continue;
      index.push_back(s);
      re.push_back(d.c(s).real());
      im.push_back(d.c(s).imag());
    }
    j["mode_index"] = index;
    j["c_s_real"] = re;
    j["c_s_imag"] = im;
    j["c0"] = d.c0;
    j["c0_squared"] = d.c0_squared;
  }
  j["calA_at_one_minus_one"] = d.calA_at_one_minus_one;
  j["max_backward_error"] = d.max_backward_error;
  j["max_condition"] = d.max_condition;
  j["max_root_error"] = d.max_root_error;
  return j;
}

nlohmann::json to_json(const TimeSeries& ts) {
  nlohmann::json j;
  j["method"] = ts.method;
  j["spec_hash"] = ts.spec_hash;
  j["precision"] = std::string(to_string(ts.precision));
  j["zero_mode_offset"] = ts.zero_mode_offset;
  j["max_imag"] = ts.max_imag;
  j["t"] = nlohmann::json::array();
  for (std::size_t t = 0; t < ts.values.size(); ++t) j["t"].push_back(t);
  j["chi"] = ts.values;
  return j;
}

std::string to_csv(const TimeSeries& ts) {
  std::string out = "t,chi\n";
  for (std::size_t t = 0; t < ts.values.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(ts.values[t]);
    out += '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::io, "cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) fail(ErrorCode::io, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::io, "cannot move output into place at " + path.string());
  }
}

}  // namespace ffd
