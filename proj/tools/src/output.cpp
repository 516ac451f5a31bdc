// Copyright 2026 The trigzeros Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trigzeros/cli/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trigzeros/zerocount.hpp"

namespace trigzeros::cli {

#ifndef TRIGZEROS_VERSION
#define TRIGZEROS_VERSION "0.0.0"
#endif

std::string version() { return TRIGZEROS_VERSION; }

namespace {

std::string header(const ExperimentConfig& config) {
  return "# trigzeros " + version() + "\n# config " + echo_line(config) + "\n";
}

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_counts_csv(const std::string& path, const ExperimentConfig& config,
                      const std::vector<CountRecord>& records) {
  std::string text = header(config) + "replication,count,method,flags\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    const CountRecord& rec = records[r];
    text += std::to_string(r) + ",";
    if (!rec.failed) text += std::to_string(rec.count);
    text += "," + rec.method + ",";
    text += rec.failed ? std::string("NumericalFailure") : flags_to_string(rec.flags);
    text += "\n";
  }
  write_text(path, text);
}

void write_moments_csv(const std::string& path, const ExperimentConfig& config,
                       const std::map<int, MomentEstimate>& moments) {
  std::string text = header(config) + "m,estimate,se\n";
  for (const auto& [m, est] : moments) {
    text += std::to_string(m) + "," + format_number(est.estimate) + "," + format_number(est.se) +
            "\n";
  }
  write_text(path, text);
}

std::string histogram_svg(const std::vector<HistogramPanel>& panels, const std::string& title,
                          const std::string& config_echo) {
  constexpr double kWidth = 720, kPanelH = 170, kTop = 40, kLeft = 60, kRight = 20,
                   kAxisH = 40;
  std::uint64_t kmax = 1;
  for (const auto& p : panels) {
    if (!p.pmf.empty()) kmax = std::max(kmax, p.pmf.rbegin()->first);
  }
  const double height = kTop + kPanelH * static_cast<double>(panels.size()) + kAxisH;
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = plot_w / static_cast<double>(kmax + 1);
  const double bar = std::max(1.0, slot * 0.8);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0)
      << "\" height=\"" << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << " "
      << fixed(height, 0) << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<metadata>trigzeros " << version() << "; " << xml_escape(config_echo) << "</metadata>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";

  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    const double y0 = kTop + kPanelH * static_cast<double>(i);
    const double base = y0 + kPanelH - 20;
    const double plot_h = kPanelH - 40;
    double pmax = 0.0;
    for (const auto& [k, v] : p.pmf) pmax = std::max(pmax, v);
    if (pmax <= 0.0) pmax = 1.0;
    svg << "<g class=\"panel\" id=\"panel" << i << "\">\n"
        << "<text x=\"" << fixed(kLeft) << "\" y=\"" << fixed(y0 + 14) << "\" font-size=\"12\">"
        << xml_escape(p.title) << (p.note.empty() ? "" : " (" + xml_escape(p.note) + ")")
        << "</text>\n"
        << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(base) << "\" x2=\""
        << fixed(kLeft + plot_w) << "\" y2=\"" << fixed(base) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(base - plot_h + 4)
        << "\" text-anchor=\"end\">" << fixed(pmax, 3) << "</text>\n";
    for (const auto& [k, v] : p.pmf) {
      const double h = plot_h * v / pmax;
      const double x = kLeft + slot * static_cast<double>(k) + (slot - bar) / 2;
      svg << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(base - h) << "\" width=\""
          << fixed(bar) << "\" height=\"" << fixed(h) << "\" fill=\"#4a78b5\"><title>k=" << k
          << " p=" << format_number(v) << "</title></rect>\n";
    }
    svg << "</g>\n";
  }
  // Shared x-axis labels.
  const double axis_y = kTop + kPanelH * static_cast<double>(panels.size()) + 4;
  const std::uint64_t step = std::max<std::uint64_t>(1, (kmax + 1) / 20 + 1);
  for (std::uint64_t k = 0; k <= kmax; k += step) {
    svg << "<text x=\"" << fixed(kLeft + slot * (static_cast<double>(k) + 0.5)) << "\" y=\""
        << fixed(axis_y) << "\" text-anchor=\"middle\">" << k << "</text>\n";
  }
  svg << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(axis_y + 20)
      << "\" text-anchor=\"middle\">number of zeros</text>\n</svg>\n";
  return svg.str();
}

}  // namespace trigzeros::cli
