#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "nrq/cycles.hpp"
#include "nrq/density.hpp"
#include "nrq/interference.hpp"
#include "nrq/newton.hpp"
#include "nrq/qops.hpp"

namespace nrq::cli {

inline constexpr std::string_view kCsvMagic = "# nrq-csv v1";

// Every CSV starts with kCsvMagic, may carry further '#' comment lines, then
// a column header and rows. Numbers are printed with 17 significant digits,
// independent of locale; lines end in '\n'.

/// Columns `bin_center,density`; binning and out-of-range counts go in a
/// comment line so that parse_density_csv can rebuild the histogram exactly.
std::string emit_csv(const EmpiricalDensity& density);
/// Columns `k,omega`.
std::string emit_csv(std::span<const qops::BandPoint> spectrum);
/// Columns `step,x`; the orbit status goes in a comment line.
std::string emit_csv(const Orbit& orbit);
/// Columns `cycle,index,x,residual`.
std::string emit_csv(const CycleSearch& cycles);

/// Inverse of emit_csv(EmpiricalDensity). Throws Error{IoError} on malformed
/// input.
EmpiricalDensity parse_density_csv(std::string_view text);

struct SvgOptions {
  /// Analytic curve drawn as a second polyline, e.g. cauchy_density.
  std::function<double(double)> overlay;
  std::string title;
};

/// Standalone SVG document: axes, the density as a polyline, the optional
/// overlay polyline, and one <circle class="peak"> per peak.
std::string emit_svgdata(const EmpiricalDensity& density, std::span<const Peak> peaks,
                         const SvgOptions& options = {});

/// Formats with 17 significant digits ("%.17g").
std::string format_number(double v);

}  // namespace nrq::cli
