#include "stitlab/palm_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stitlab/error.hpp"
#include "stitlab/parallel.hpp"

namespace stitlab {

namespace {

void check_indices(int d, int j, double t) {
  if (d < 2) throw Error(Errc::BadDimension, "dimension must be at least 2");
  if (j != 0 && j != 1) throw Error(Errc::BadDimension, "weight index must be 0 or 1");
  if (!(t > 0.0)) throw Error(Errc::InvalidArgument, "horizon must be positive");
}

}  // namespace

std::vector<double> sample_birth_times(int d, int j, double t, Rng& rng) {
  check_indices(d, j, t);
  const double last = t * std::pow(uniform01_open_low(rng), 1.0 / (d - j));
  std::vector<double> s(static_cast<std::size_t>(d - 1));
  for (int i = 0; i + 1 < d - 1; ++i) s[i] = last * uniform01(rng);
  std::sort(s.begin(), s.end() - 1);
  s.back() = last;
  return s;
}

double internal_vertex_rate(const std::vector<double>& birth_times, int d, double t) {
  if (birth_times.size() != static_cast<std::size_t>(d - 1))
    throw Error(Errc::BadDimension, "need d-1 birth times");
  double a = d * t - 2.0 * birth_times.back();
  for (std::size_t i = 0; i + 1 < birth_times.size(); ++i) a -= birth_times[i];
  return a;
}

PalmSegmentSample sample_typical_segment(int d, int j, double t, Rng& rng) {
  PalmSegmentSample out;
  out.birth_times = sample_birth_times(d, j, t, rng);
  out.weight_index = j;
  out.dim = d;
  out.horizon = t;
  const double last = out.birth_times.back();
  // Section of Y_{last} by the segment's line: typical length Exp(last);
  // length weighting turns it into Gamma(2, last).
  out.length = exponential(rng, last);
  if (j == 1) out.length += exponential(rng, last);
  const double mean = out.length * internal_vertex_rate(out.birth_times, d, t);
  if (mean > 0.0) out.internal_vertices = std::poisson_distribution<std::uint64_t>(mean)(rng);
  return out;
}

std::string palm_stream_name(int d, int j) { return "palm-d" + std::to_string(d) + "-j" + std::to_string(j); }

std::vector<PalmSegmentSample> sample_palm_batch(int d, int j, double t, std::size_t n, std::uint64_t seed,
                                                 unsigned threads, std::size_t first_chunk) {
  std::vector<PalmSegmentSample> out(n);
  const std::string stream = palm_stream_name(d, j);
  const std::size_t chunks = (n + kPalmChunk - 1) / kPalmChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng = make_stream(seed, stream, first_chunk + c);
    const std::size_t end = std::min(n, (c + 1) * kPalmChunk);
    for (std::size_t i = c * kPalmChunk; i < end; ++i) out[i] = sample_typical_segment(d, j, t, rng);
  });
  return out;
}

}  // namespace stitlab
