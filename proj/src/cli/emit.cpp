#include "nrq/cli/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "nrq/error.hpp"

namespace nrq::cli {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

namespace {

const char* state_name(OrbitState s) {
  switch (s) {
    case OrbitState::Running: return "running";
    case OrbitState::Converged: return "converged";
    case OrbitState::PoleHit: return "pole";
    case OrbitState::Overflowed: return "overflow";
  }
  return "unknown";
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(Errc::IoError, "malformed density CSV: " + what);
}

double to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) malformed("bad number '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) malformed("bad count '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

}  // namespace

std::string emit_csv(const EmpiricalDensity& d) {
  std::string out;
  out += kCsvMagic;
  out += '\n';
  out += fmt::format("# lo={} hi={} bins={} total={} below={} above={}\n", format_number(d.lo()),
                     format_number(d.hi()), d.bins(), d.total(), d.below_count(), d.above_count());
  out += "bin_center,density\n";
  for (std::size_t i = 0; i < d.bins(); ++i)
    out += fmt::format("{},{}\n", format_number(d.bin_center(i)), format_number(d.density(i)));
  return out;
}

std::string emit_csv(std::span<const qops::BandPoint> spectrum) {
  if (spectrum.empty()) throw Error(Errc::InvalidArgument, "empty spectrum");
  std::string out;
  out += kCsvMagic;
  out += "\nk,omega\n";
  for (const auto& p : spectrum) out += fmt::format("{},{}\n", format_number(p.k), format_number(p.omega));
  return out;
}

std::string emit_csv(const Orbit& orbit) {
  std::string out;
  out += kCsvMagic;
  out += fmt::format("\n# status={} step={}", state_name(orbit.status.state), orbit.status.step);
  if (orbit.status.state == OrbitState::Converged) out += " value=" + format_number(orbit.status.value);
  out += "\nstep,x\n";
  for (std::size_t i = 0; i < orbit.iterates.size(); ++i)
    out += fmt::format("{},{}\n", i, format_number(orbit.iterates[i]));
  return out;
}

std::string emit_csv(const CycleSearch& search) {
  std::string out;
  out += kCsvMagic;
  out += fmt::format("\n# cycles={} pole_intervals={}\n", search.cycles.size(), search.poles.size());
  out += "cycle,index,x,residual\n";
  for (std::size_t c = 0; c < search.cycles.size(); ++c) {
    const Cycle& cy = search.cycles[c];
    for (std::size_t i = 0; i < cy.points.size(); ++i)
      out += fmt::format("{},{},{},{}\n", c, i, format_number(cy.points[i]), format_number(cy.residual));
  }
  return out;
}

EmpiricalDensity parse_density_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 3 || lines[0] != kCsvMagic) malformed("missing header");

  std::map<std::string, std::string, std::less<>> meta;
  std::size_t row = 1;
  for (; row < lines.size() && lines[row].starts_with('#'); ++row) {
    std::istringstream fields{std::string(lines[row].substr(1))};
    std::string kv;
    while (fields >> kv) {
      const auto eq = kv.find('=');
      if (eq != std::string::npos) meta[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  }
  for (const char* key : {"lo", "hi", "bins", "below", "above", "total"})
    if (!meta.contains(key)) malformed(std::string("missing '") + key + "'");
  if (row >= lines.size() || lines[row] != "bin_center,density") malformed("missing column header");
  ++row;

  const double lo = to_double(meta["lo"]);
  const double hi = to_double(meta["hi"]);
  const std::uint64_t bins = to_u64(meta["bins"]);
  const std::uint64_t below = to_u64(meta["below"]);
  const std::uint64_t above = to_u64(meta["above"]);
  const std::uint64_t total = to_u64(meta["total"]);
  if (total < below + above) malformed("inconsistent totals");
  const std::uint64_t in_range = total - below - above;

  std::vector<double> values;
  for (; row < lines.size(); ++row) {
    if (lines[row].empty()) continue;
    const auto comma = lines[row].find(',');
    if (comma == std::string_view::npos) malformed("row without comma");
    values.push_back(to_double(lines[row].substr(comma + 1)));
  }
  if (values.size() != bins) malformed("row count does not match bins");

  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::uint64_t> counts(bins);
  for (std::size_t i = 0; i < bins; ++i)
    counts[i] = static_cast<std::uint64_t>(std::llround(values[i] * static_cast<double>(in_range) * width));
  EmpiricalDensity d = EmpiricalDensity::from_parts(lo, hi, std::move(counts), below, above);
  if (d.total() != total) malformed("counts do not add up to total");
  for (std::size_t i = 0; i < bins; ++i)
    if (d.density(i) != values[i]) malformed("density values are not consistent with the counts");
  return d;
}

std::string emit_svgdata(const EmpiricalDensity& d, std::span<const Peak> peaks,
                         const SvgOptions& options) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 70, kRight = 780, kTop = 30, kBottom = 450;

  const std::vector<double> values = d.densities();
  double ymax = *std::max_element(values.begin(), values.end());
  std::vector<double> overlay;
  if (options.overlay) {
    overlay.resize(d.bins());
    for (std::size_t i = 0; i < d.bins(); ++i) overlay[i] = options.overlay(d.bin_center(i));
    ymax = std::max(ymax, *std::max_element(overlay.begin(), overlay.end()));
  }
  if (!(ymax > 0.0)) ymax = 1.0;
  ymax *= 1.05;

  const auto px = [&](double x) { return kLeft + (x - d.lo()) / (d.hi() - d.lo()) * (kRight - kLeft); };
  const auto py = [&](double y) { return kBottom - y / ymax * (kBottom - kTop); };
  const auto points = [&](const std::vector<double>& ys) {
    std::string s;
    for (std::size_t i = 0; i < ys.size(); ++i)
      s += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", px(d.bin_center(i)), py(ys[i]));
    return s;
  };

  std::string out;
  out += fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty())
    out += fmt::format("<text x=\"{}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                       (kLeft + kRight) / 2, options.title);
  out += fmt::format("<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
                     "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\"/>\n"
                     "<line x1=\"{0}\" y1=\"{3}\" x2=\"{0}\" y2=\"{2}\"/>\n</g>\n",
                     kLeft, kRight, kBottom, kTop);
  out += "<g class=\"ticks\" font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = d.lo() + (d.hi() - d.lo()) * t / 4.0;
    const double y = ymax / 1.05 * t / 4.0;
    out += fmt::format("<text x=\"{:.3f}\" y=\"{}\" text-anchor=\"middle\">{:.4g}</text>\n", px(x), kBottom + 16, x);
    out += fmt::format("<text x=\"{}\" y=\"{:.3f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 6, py(y) + 4, y);
  }
  out += "</g>\n";
  out += fmt::format("<polyline class=\"density\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.2\" points=\"{}\"/>\n",
                     points(values));
  if (options.overlay)
    out += fmt::format("<polyline class=\"overlay\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>\n",
                       points(overlay));
  for (const Peak& p : peaks)
    out += fmt::format("<circle class=\"peak\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"4\" fill=\"crimson\"/>\n", px(p.center),
                       py(p.height));
  out += "</svg>\n";
  return out;
}

}  // namespace nrq::cli
