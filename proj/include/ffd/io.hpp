#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ffd/dynamics.hpp"
#include "ffd/spectrum.hpp"

namespace ffd {

// Shortest round-trip form with at most 17 significant digits; '.' decimal point regardless of locale.
std::string format_double(double v);

nlohmann::json to_json(const SpectralData& d);
nlohmann::json to_json(const TimeSeries& ts);

// Header "t,chi", one row per step, LF line endings.
std::string to_csv(const TimeSeries& ts);

// Writes to a temporary sibling and renames it over the target.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ffd
