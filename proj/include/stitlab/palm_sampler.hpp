#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stitlab/random.hpp"

namespace stitlab {

/// One draw of the typical (j=0) or length-weighted (j=1) maximal segment of a
/// stationary STIT tessellation at time t. Lengths are in units where the line
/// hit rate of the segment direction is 1.
struct PalmSegmentSample {
  std::vector<double> birth_times;  // s_1 < ... < s_{d-1}
  double length = 0.0;
  std::uint64_t internal_vertices = 0;
  int weight_index = 0;
  int dim = 2;
  double horizon = 1.0;
};

/// Birth times of the d-1 maximal polytopes meeting in the segment: the last
/// one has density (d-j) s^{d-j-1} / t^{d-j}, the others are sorted uniforms on
/// (0, last).
std::vector<double> sample_birth_times(int d, int j, double t, Rng& rng);

/// Intensity per unit length of internal vertices on a segment with the
/// given birth times: d t - 2 s_{d-1} - (s_1 + ... + s_{d-2}).
double internal_vertex_rate(const std::vector<double>& birth_times, int d, double t);

PalmSegmentSample sample_typical_segment(int d, int j, double t, Rng& rng);

/// Samples are drawn in chunks of kPalmChunk, chunk c from stream
/// ("palm-d<d>-j<j>", c) of `seed`, so the output does not depend on threads.
inline constexpr std::size_t kPalmChunk = 10000;

std::string palm_stream_name(int d, int j);

/// Samples with indices [first_chunk * kPalmChunk, first_chunk * kPalmChunk + n).
std::vector<PalmSegmentSample> sample_palm_batch(int d, int j, double t, std::size_t n, std::uint64_t seed,
                                                 unsigned threads = 1, std::size_t first_chunk = 0);

}  // namespace stitlab
