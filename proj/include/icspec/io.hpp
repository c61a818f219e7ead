#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "icspec/core.hpp"
#include "icspec/inference.hpp"
#include "icspec/subsample.hpp"

namespace icspec {

/// Resolved settings embedded in every result file, in insertion order.
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal text that parses back to the identical double.
[[nodiscard]] std::string format_double(double value);

/**
 * @brief Reads a single-column numeric CSV (extra columns are ignored).
 *
 * Lines starting with '#' and a non-numeric header row are skipped.
 * @throws std::invalid_argument on unparsable or non-finite values
 */
[[nodiscard]] RealSeries read_series_csv(std::istream& in);
[[nodiscard]] RealSeries read_series_csv(const std::string& path);

void write_provenance(std::ostream& out, const Provenance& provenance);
void write_series_csv(std::ostream& out, const RealSeries& series, const Provenance& provenance = {});

/// Columns ell, lambda, tau1, tau2, re, im; rows ordered by (ell, tau1 index, tau2 index).
void write_surface_csv(std::ostream& out, const SpectralSurface& surface, const Provenance& provenance = {});
[[nodiscard]] SpectralSurface read_surface_csv(std::istream& in);
[[nodiscard]] SpectralSurface read_surface_csv(const std::string& path);

[[nodiscard]] nlohmann::json to_json(const FrequencyGrid& grid);
[[nodiscard]] nlohmann::json to_json(const QuantileGrid& grid);
[[nodiscard]] nlohmann::json to_json(const SpectralSurface& surface);
[[nodiscard]] nlohmann::json to_json(const TestReport& report);
[[nodiscard]] nlohmann::json to_json(const Provenance& provenance);

[[nodiscard]] FrequencyGrid frequency_grid_from_json(const nlohmann::json& j);
[[nodiscard]] QuantileGrid quantile_grid_from_json(const nlohmann::json& j);
[[nodiscard]] SpectralSurface surface_from_json(const nlohmann::json& j);

/// Columns ell, lambda, tau1, tau2, part, lower, upper, center.
void write_band_csv(std::ostream& out, const std::vector<Band>& bands, const Provenance& provenance = {});

/**
 * @brief Key/value settings from a flat config file or from a result file.
 *
 * Accepts `key = value` lines, the `# key=value` header written into CSV results, and the
 * "config" object of JSON results.
 */
[[nodiscard]] Provenance read_settings(std::istream& in);
[[nodiscard]] Provenance read_settings(const std::string& path);

}  // namespace icspec
