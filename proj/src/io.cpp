#include "icspec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace icspec {
namespace {

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& value) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view line, char separator) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(separator, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return in;
}

bool is_key(std::string_view key) {
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    });
}

std::string json_scalar(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buffer, ptr);
}

RealSeries read_series_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_number = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_number;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto field = split(text, ',').front();
        double value = 0.0;
        if (!parse_double(field, value)) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw std::invalid_argument("line " + std::to_string(line_number) + ": cannot parse '" +
                                        std::string(field) + "' as a number");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("line " + std::to_string(line_number) + ": non-finite value");
        }
        header_allowed = false;
        values.push_back(value);
    }
    return RealSeries(std::move(values));
}

RealSeries read_series_csv(const std::string& path) {
    auto in = open(path);
    return read_series_csv(in);
}

void write_provenance(std::ostream& out, const Provenance& provenance) {
    for (const auto& [key, value] : provenance) out << "# " << key << '=' << value << '\n';
}

void write_series_csv(std::ostream& out, const RealSeries& series, const Provenance& provenance) {
    write_provenance(out, provenance);
    out << "x\n";
    for (double value : series.values()) out << format_double(value) << '\n';
}

void write_surface_csv(std::ostream& out, const SpectralSurface& surface, const Provenance& provenance) {
    write_provenance(out, provenance);
    const auto& frequencies = surface.frequencies();
    const auto& quantiles = surface.quantiles();
    out << "ell,lambda,tau1,tau2,re,im\n";
    for (std::size_t ell = 0; ell < frequencies.size(); ++ell) {
        for (std::size_t i = 0; i < quantiles.size(); ++i) {
            for (std::size_t j = 0; j < quantiles.size(); ++j) {
                const Complex z = surface.at(ell, i, j);
                out << ell << ',' << format_double(frequencies.lambda(ell)) << ',' << format_double(quantiles[i])
                    << ',' << format_double(quantiles[j]) << ',' << format_double(z.real()) << ','
                    << format_double(z.imag()) << '\n';
            }
        }
    }
}

SpectralSurface read_surface_csv(std::istream& in) {
    struct Row {
        std::size_t ell;
        double lambda, tau1, tau2, re, im;
    };
    std::vector<Row> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (!header_seen) {
            if (text != "ell,lambda,tau1,tau2,re,im") throw std::invalid_argument("unexpected surface CSV header");
            header_seen = true;
            continue;
        }
        const auto fields = split(text, ',');
        if (fields.size() != 6) throw std::invalid_argument("surface CSV rows need six fields");
        Row row{};
        double ell = 0.0;
        if (!parse_double(fields[0], ell) || !parse_double(fields[1], row.lambda) ||
            !parse_double(fields[2], row.tau1) || !parse_double(fields[3], row.tau2) ||
            !parse_double(fields[4], row.re) || !parse_double(fields[5], row.im) || ell < 0.0) {
            throw std::invalid_argument("malformed surface CSV row: " + std::string(text));
        }
        row.ell = static_cast<std::size_t>(ell);
        rows.push_back(row);
    }
    if (rows.empty()) throw std::invalid_argument("surface CSV has no rows");

    std::vector<double> levels;
    for (const auto& row : rows) {
        if (std::none_of(levels.begin(), levels.end(), [&](double v) { return v == row.tau1; })) levels.push_back(row.tau1);
    }
    std::sort(levels.begin(), levels.end());
    std::int64_t d = 1;
    for (const auto& row : rows) {
        if (row.ell > 0) {
            d = std::llround(kTwoPi * static_cast<double>(row.ell) / row.lambda);
            break;
        }
    }
    SpectralSurface surface{FrequencyGrid(d), QuantileGrid(levels)};
    if (rows.size() != surface.entries().size()) throw std::invalid_argument("surface CSV is incomplete");
    for (const auto& row : rows) {
        if (row.ell >= surface.frequencies().size()) throw std::invalid_argument("surface CSV frequency out of range");
        surface.at(row.ell, surface.quantiles().index_of(row.tau1), surface.quantiles().index_of(row.tau2)) =
            Complex(row.re, row.im);
    }
    return surface;
}

SpectralSurface read_surface_csv(const std::string& path) {
    auto in = open(path);
    return read_surface_csv(in);
}

nlohmann::json to_json(const FrequencyGrid& grid) { return {{"d", grid.d()}}; }

nlohmann::json to_json(const QuantileGrid& grid) {
    return {{"levels", std::vector<double>(grid.levels().begin(), grid.levels().end())}};
}

nlohmann::json to_json(const SpectralSurface& surface) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (const auto& z : surface.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"frequencies", to_json(surface.frequencies())},
            {"quantiles", to_json(surface.quantiles())},
            {"layout", "ell-major, then tau1, then tau2"},
            {"re", std::move(re)},
            {"im", std::move(im)}};
}

nlohmann::json to_json(const TestReport& report) {
    return {{"test", report.test},
            {"statistic", report.statistic},
            {"p_value", report.p_value},
            {"n", report.n},
            {"b", report.b},
            {"d", report.d},
            {"weight", std::string(to_string(report.weight))},
            {"fpc", report.fpc},
            {"grid_size", report.grid_size},
            {"alpha", report.alpha},
            {"reject", report.rejects()}};
}

nlohmann::json to_json(const Provenance& provenance) {
    nlohmann::json object = nlohmann::json::object();
    for (const auto& [key, value] : provenance) object[key] = value;
    return object;
}

FrequencyGrid frequency_grid_from_json(const nlohmann::json& j) { return FrequencyGrid(j.at("d").get<std::int64_t>()); }

QuantileGrid quantile_grid_from_json(const nlohmann::json& j) {
    return QuantileGrid(j.at("levels").get<std::vector<double>>());
}

SpectralSurface surface_from_json(const nlohmann::json& j) {
    SpectralSurface surface(frequency_grid_from_json(j.at("frequencies")), quantile_grid_from_json(j.at("quantiles")));
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    auto entries = surface.entries();
    if (re.size() != entries.size() || im.size() != entries.size()) {
        throw std::invalid_argument("surface JSON has the wrong number of entries");
    }
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = Complex(re[k], im[k]);
    return surface;
}

void write_band_csv(std::ostream& out, const std::vector<Band>& bands, const Provenance& provenance) {
    write_provenance(out, provenance);
    out << "ell,lambda,tau1,tau2,part,lower,upper,center\n";
    for (const auto& band : bands) {
        for (const auto& cell : band.cells) {
            out << cell.ell << ',' << format_double(band.frequencies.lambda(cell.ell)) << ','
                << format_double(cell.tau1) << ',' << format_double(cell.tau2) << ',' << to_string(band.part) << ','
                << format_double(cell.lower()) << ',' << format_double(cell.upper()) << ','
                << format_double(cell.center) << '\n';
        }
    }
}

Provenance read_settings(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();
    Provenance settings;
    if (const auto start = trim(content); !start.empty() && start.front() == '{') {
        const auto j = nlohmann::json::parse(content);
        if (j.contains("config")) {
            for (const auto& [key, value] : j.at("config").items()) settings.emplace_back(key, json_scalar(value));
        }
        return settings;
    }
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        auto text = trim(line);
        if (!text.empty() && text.front() == '#') text = trim(text.substr(1));
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = trim(text.substr(0, eq));
        if (!is_key(key)) continue;
        settings.emplace_back(std::string(key), std::string(trim(text.substr(eq + 1))));
    }
    return settings;
}

Provenance read_settings(const std::string& path) {
    auto in = open(path);
    return read_settings(in);
}

}  // namespace icspec
