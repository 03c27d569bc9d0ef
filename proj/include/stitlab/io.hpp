#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stitlab/analytics.hpp"
#include "stitlab/experiments.hpp"
#include "stitlab/palm_sampler.hpp"
#include "stitlab/stit_engine.hpp"

namespace stitlab {

inline constexpr std::string_view kTessFormat = "stit-tess/1";
inline constexpr std::string_view kReportFormat = "stitlab-report/1";

/// Serializes a state as a stit-tess/1 JSON document. The event log is enough
/// to rebuild everything else; cells and faces are included for consumers.
std::string tessellation_to_json(const TessellationState& state, std::string_view config_hash = {});

/// Rebuilds a state from a stit-tess/1 document by replaying its events in its
/// window. Throws Error(Errc::Config) on malformed input.
TessellationState tessellation_from_json(std::string_view text);

/// Planar states only: faces as polylines, older faces drawn darker.
std::string tessellation_to_svg(const TessellationState& state, double width_px = 640.0);

/// One row per sample: s_1..s_{d-1}, L, N with round-trip precision.
void write_palm_header(std::ostream& out, int d);
void write_palm_rows(std::ostream& out, std::span<const PalmSegmentSample> samples);

/// n, p, error rows.
std::string p1j_csv(unsigned n_lo, unsigned n_hi, const DistributionSpec& spec);

/// Machine-readable report. Runtimes and the timestamp sit under "metadata" so
/// that everything else is reproducible byte for byte.
std::string report_to_json(const AcceptanceReport& report, std::string_view timestamp = {});
std::string report_to_markdown(const AcceptanceReport& report);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

}  // namespace stitlab
