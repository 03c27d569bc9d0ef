#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stitlab/analytics.hpp"
#include "stitlab/config.hpp"
#include "stitlab/error.hpp"
#include "stitlab/experiments.hpp"
#include "stitlab/io.hpp"
#include "stitlab/mecke.hpp"
#include "stitlab/palm_sampler.hpp"
#include "stitlab/parallel.hpp"
#include "stitlab/stit_engine.hpp"

namespace py = pybind11;
using namespace stitlab;

namespace {

py::array_t<double> as_array(const std::vector<Vec>& xs, int dim) {
  py::array_t<double> out({static_cast<py::ssize_t>(xs.size()), static_cast<py::ssize_t>(dim)});
  auto r = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (int k = 0; k < dim; ++k) r(i, k) = xs[i][k];
  return out;
}

ConvexPolytope box_window(const std::vector<double>& lo, const std::vector<double>& hi) {
  if (lo.size() != hi.size() || (lo.size() != 2 && lo.size() != 3))
    throw Error(Errc::InvalidWindow, "lo and hi must both have 2 or 3 coordinates");
  Vec a = Vec::Zero(), b = Vec::Zero();
  for (std::size_t k = 0; k < lo.size(); ++k) {
    a[k] = lo[k];
    b[k] = hi[k];
  }
  return ConvexPolytope::box(a, b, static_cast<int>(lo.size()));
}

py::dict palm_samples(int d, int j, double t, std::size_t n, std::uint64_t seed, unsigned threads) {
  const auto xs = sample_palm_batch(d, j, t, n, seed, resolve_threads(threads));
  py::array_t<double> births({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(d - 1)});
  py::array_t<double> length(static_cast<py::ssize_t>(n));
  py::array_t<std::uint64_t> count(static_cast<py::ssize_t>(n));
  auto b = births.mutable_unchecked<2>();
  auto l = length.mutable_unchecked<1>();
  auto c = count.mutable_unchecked<1>();
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < d - 1; ++k) b(i, k) = xs[i].birth_times[k];
    l(i) = xs[i].length;
    c(i) = xs[i].internal_vertices;
  }
  py::dict out;
  out["birth_times"] = births;
  out["length"] = length;
  out["internal_vertices"] = count;
  return out;
}

py::dict mecke_estimates(const std::string& variant, const std::string& measure, double side, double margin,
                         double horizon, std::size_t replications, std::size_t grid, std::uint64_t seed,
                         unsigned threads) {
  const auto w = ConvexPolytope::box(Vec(0, 0, 0), Vec(side, side, 0), 2);
  const auto inner = inner_box(w, margin);
  MeckeFunctional g;
  if (variant == "simple") {
    const auto half = ConvexPolytope::box(Vec(margin, margin, 0), Vec(0.5 * side, side - margin, 0), 2);
    g = MeckeFunctional::simple(horizon, inner, [](double s) { return s; }, [](double v) { return v; }, half);
  } else if (variant == "nested") {
    g = MeckeFunctional::nested(horizon, inner, 0);
  } else {
    throw Error(Errc::InvalidArgument, "variant must be 'simple' or 'nested'");
  }
  MeckeOptions o;
  o.replications = replications;
  o.seed = seed;
  o.threads = resolve_threads(threads);
  o.s_grid = uniform_grid(horizon, grid);
  const auto m = parse_measure_name(measure).build(2);
  const auto l = mecke_lhs(g, w, m, o);
  const auto r = mecke_rhs(g, w, m, o);
  py::dict out;
  out["lhs"] = py::make_tuple(l.mean, l.half_width);
  out["rhs"] = py::make_tuple(r.mean, r.half_width);
  out["overlap"] = intervals_overlap(l, r);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "STIT tessellation simulation and analytics";

  py::register_exception<Error>(m, "StitlabError", PyExc_RuntimeError);

  py::class_<TessellationState>(m, "Tessellation")
      .def_property_readonly("dim", &TessellationState::dim)
      .def_readonly("time", &TessellationState::time)
      .def_property_readonly("cell_count", [](const TessellationState& s) { return s.cells.size(); })
      .def_property_readonly("face_count", [](const TessellationState& s) { return s.ledger.size(); })
      .def_property_readonly("event_count", [](const TessellationState& s) { return s.events.size(); })
      .def("cells", [](const TessellationState& s) {
        py::list out;
        for (const auto& c : s.cells) out.append(as_array({c.polytope.vertices().begin(), c.polytope.vertices().end()}, s.dim()));
        return out;
      }, "Vertex arrays of the cells.")
      .def("faces", [](const TessellationState& s) {
        py::list out;
        for (const auto& rec : s.ledger) {
          py::dict f;
          f["id"] = rec.id;
          f["vertices"] = as_array(rec.face.vertices, s.dim());
          f["birth_time"] = rec.birth_time;
          f["internal_vertices"] = rec.internal_vertices.size();
          f["clipped"] = rec.touches_window_boundary;
          out.append(f);
        }
        return out;
      }, "Maximal faces with birth times.")
      .def("to_json", [](const TessellationState& s) { return tessellation_to_json(s); })
      .def("to_svg", [](const TessellationState& s, double width) { return tessellation_to_svg(s, width); },
           py::arg("width") = 640.0)
      .def("restrict", [](const TessellationState& s, std::vector<double> lo, std::vector<double> hi) {
        return restrict(s, box_window(lo, hi));
      }, py::arg("lo"), py::arg("hi"))
      .def("rescale", [](const TessellationState& s, double c) { return rescale(s, c); }, py::arg("factor"))
      .def("line_section", [](const TessellationState& s, std::vector<double> a, std::vector<double> b) {
        Vec x = Vec::Zero(), y = Vec::Zero();
        for (std::size_t k = 0; k < a.size() && k < 3; ++k) x[k] = a[k];
        for (std::size_t k = 0; k < b.size() && k < 3; ++k) y[k] = b[k];
        return as_array(line_section(s, x, y), s.dim());
      }, py::arg("a"), py::arg("b"), "Crossing points of the segment [a, b] with the faces.")
      .def("typical_segments", [](const TessellationState& s, double margin) {
        const auto segs = extract_typical_segments_2d(s, inner_box(s.window, margin));
        py::list out;
        for (const auto& x : segs) out.append(py::make_tuple(x.birth_time, x.length, x.internal_vertices));
        return out;
      }, py::arg("margin"), "(birth_time, length, internal_vertices) of minus-sampled segments.");

  m.def("simulate",
        [](std::vector<double> lo, std::vector<double> hi, double horizon, const std::string& measure,
           std::uint64_t seed) {
          const auto w = box_window(lo, hi);
          Rng rng = make_stream(seed, "simulate", 0);
          return run_local_stit(w, parse_measure_name(measure).build(w.dim()), horizon, rng);
        },
        py::arg("lo"), py::arg("hi"), py::arg("horizon"), py::arg("measure") = "isotropic", py::arg("seed") = 0,
        "Local STIT process in the box [lo, hi] up to `horizon`.");
  m.def("from_json", [](const std::string& text) { return tessellation_from_json(text); }, py::arg("text"));

  m.def("p1j",
        [](unsigned n, int d, int j, double t) {
          const auto e = p1j(n, DistributionSpec{d, j, t});
          return py::make_tuple(e.value, e.error);
        },
        py::arg("n"), py::arg("d"), py::arg("j"), py::arg("t") = 1.0,
        "(probability, error bound) of n internal vertices.");
  m.def("mean_internal_vertices", &mean_internal_vertices, py::arg("d"), py::arg("j"));
  m.def("last_birth_cdf", &last_birth_cdf, py::arg("s"), py::arg("d"), py::arg("j"), py::arg("t"));
  m.def("palm_samples", &palm_samples, py::arg("d"), py::arg("j"), py::arg("t") = 1.0, py::arg("samples") = 10000,
        py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("mecke", &mecke_estimates, py::arg("variant") = "simple", py::arg("measure") = "axis-parallel",
        py::arg("side") = 20.0, py::arg("margin") = 5.0, py::arg("horizon") = 1.0, py::arg("replications") = 200,
        py::arg("grid") = 41, py::arg("seed") = 0, py::arg("threads") = 0,
        "Both sides of the Mecke-type formula as (mean, 95% half-width).");
  m.def("verify",
        [](const std::string& config_path, std::vector<int> only) {
          std::string hash;
          auto cfg = load_acceptance_config(config_path, &hash);
          if (!only.empty()) cfg.only = only;
          AcceptanceReport rep;
          {
            py::gil_scoped_release release;
            rep = run_acceptance(cfg);
          }
          rep.config_hash = hash;
          return report_to_json(rep);
        },
        py::arg("config"), py::arg("only") = std::vector<int>{}, "Runs the acceptance suite; returns the JSON report.");
}
