#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pelastica::cliout {

/// 17-significant-digit formatting so re-runs produce byte-identical CSV;
/// infinities render as "inf"/"-inf".
std::string fmt17(double v);

void ensure_dir(const std::string& dir);
void write_file(const std::string& path, const std::string& content);

/// CSV assembly: header line plus rows of fmt17-formatted values.
std::string csv_table(const std::string& header,
                      const std::vector<std::vector<double>>& rows);

struct SvgSeries {
    std::string color;
    std::vector<std::pair<double, double>> pts;
};

/// Minimal static polyline plot (y axis up), auto-scaled to the data box.
std::string svg_polylines(const std::vector<SvgSeries>& series, int width = 640,
                          int height = 480);

}  // namespace pelastica::cliout
