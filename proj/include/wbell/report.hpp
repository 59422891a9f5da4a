#ifndef WBELL_REPORT_HPP
#define WBELL_REPORT_HPP

// Serialization of sweep results. The CSV layout is the stable contract:
//
//     omega_rad,bell_value,converged
//     0.785398163397,1.41421356237,1
//
// with every number printed to 12 significant digits. JSON and SVG are
// conveniences.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "wbell/bell.hpp"
#include "wbell/error.hpp"

namespace wbell {

inline constexpr const char* kCsvHeader = "omega_rad,bell_value,converged";

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string to_csv(std::span<const SweepPoint> points) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& p : points) {
        out += format_number(p.omega);
        out += ',';
        out += format_number(p.value);
        out += ',';
        out += p.converged ? '1' : '0';
        out += '\n';
    }
    return out;
}

/// Rows plus the optimal measurement angles of every point.
inline nlohmann::json to_json(std::span<const SweepPoint> points) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json settings = nlohmann::json::array();
        for (int k = 0; k < p.settings.n_parties(); ++k) {
            nlohmann::json party = nlohmann::json::array();
            for (int i = 1; i <= MeasurementSettings::kSettingsPerParty; ++i) {
                const auto& a = p.settings.angles(k, i);
                party.push_back({{"theta", a.theta}, {"phi", a.phi}});
            }
            settings.push_back(std::move(party));
        }
        rows.push_back({{"omega_rad", p.omega},
                        {"bell_value", p.value},
                        {"converged", p.converged},
                        {"settings", std::move(settings)}});
    }
    return rows;
}

/// Writes through a sibling temporary and renames it into place, so an
/// interrupted run never leaves a truncated file under the final name.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + path.string());
    }
}

struct PlotCurve {
    std::string label;
    std::vector<SweepPoint> points;
};

/// Overlay of several curves with the classical bound drawn at 1.
inline std::string to_svg(const std::string& title, std::span<const PlotCurve> curves) {
    constexpr double width = 720, height = 480, left = 70, right = 200, top = 40, bottom = 50;
    double xmax = 1e-9, ymin = 1.0, ymax = 1.0;
    for (const auto& c : curves)
        for (const auto& p : c.points) {
            xmax = std::max(xmax, p.omega);
            ymin = std::min(ymin, p.value);
            ymax = std::max(ymax, p.value);
        }
    const double pad = 0.05 * std::max(ymax - ymin, 1e-3);
    ymin -= pad;
    ymax += pad;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + pw * x / xmax; };
    auto sy = [&](double y) { return top + ph * (ymax - y) / (ymax - ymin); };
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    std::string s;
    auto add = [&](const std::string& x) { s += x; };
    add("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(width) + "\" height=\"" +
        format_number(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n");
    add("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    add("<text x=\"" + format_number(left) + "\" y=\"24\" font-size=\"15\">" + title + "</text>\n");
    add("<rect x=\"" + format_number(left) + "\" y=\"" + format_number(top) + "\" width=\"" + format_number(pw) +
        "\" height=\"" + format_number(ph) + "\" fill=\"none\" stroke=\"black\"/>\n");
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmax * i / 4.0, yv = ymin + (ymax - ymin) * i / 4.0;
        add("<text x=\"" + format_number(sx(xv)) + "\" y=\"" + format_number(top + ph + 18) +
            "\" text-anchor=\"middle\">" + format_number(std::round(xv * 1000) / 1000) + "</text>\n");
        add("<text x=\"" + format_number(left - 6) + "\" y=\"" + format_number(sy(yv) + 4) +
            "\" text-anchor=\"end\">" + format_number(std::round(yv * 1000) / 1000) + "</text>\n");
    }
    add("<text x=\"" + format_number(left + pw / 2) + "\" y=\"" + format_number(height - 10) +
        "\" text-anchor=\"middle\">Wigner angle (rad)</text>\n");
    add("<line x1=\"" + format_number(left) + "\" x2=\"" + format_number(left + pw) + "\" y1=\"" +
        format_number(sy(1.0)) + "\" y2=\"" + format_number(sy(1.0)) +
        "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n");

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = palette[c % std::size(palette)];
        std::string pts;
        for (const auto& p : curves[c].points) pts += format_number(sx(p.omega)) + "," + format_number(sy(p.value)) + " ";
        add("<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
            "\"/>\n");
        const double ly = top + 14 + 16 * static_cast<double>(c);
        add("<line x1=\"" + format_number(left + pw + 10) + "\" x2=\"" + format_number(left + pw + 30) + "\" y1=\"" +
            format_number(ly - 4) + "\" y2=\"" + format_number(ly - 4) + "\" stroke=\"" + color + "\"/>\n");
        add("<text x=\"" + format_number(left + pw + 34) + "\" y=\"" + format_number(ly) + "\">" + curves[c].label +
            "</text>\n");
    }
    add("</svg>\n");
    return s;
}

} // namespace wbell

#endif // WBELL_REPORT_HPP
