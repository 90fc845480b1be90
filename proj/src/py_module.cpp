#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "btab/enumerate.hpp"
#include "btab/expect.hpp"
#include "btab/pasep.hpp"
#include "btab/sample.hpp"

namespace py = pybind11;
using namespace btab;

namespace {

std::string frac(const Rational& r) { return to_fraction_string(r); }

py::dict record_to_dict(const StatRecord& r) {
  py::dict d;
  d["rows"] = r.rows;
  d["columns"] = r.columns;
  d["unrestricted"] = r.unrestricted;
  d["diagonal_ones"] = r.diagonal_ones;
  d["ss_pairs"] = r.ss_pairs;
  d["ww_pairs"] = r.ww_pairs;
  d["sw_pairs"] = r.sw_pairs;
  d["ws_pairs"] = r.ws_pairs;
  d["g_trace"] = r.g_trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "type-B permutation tableaux: enumeration, exact expectations, sampling, PASEP";

  py::register_exception<Error>(m, "BtabError");

  m.def("validate", [](const std::string& text) {
    parse(text);
    return true;
  }, py::arg("record"), "Parse and fully check one serialized tableau; raises on failure.");

  m.def("u_trace", [](const std::string& text) { return parse(text).u_trace; }, py::arg("record"));

  m.def("stats", [](const std::string& text) { return record_to_dict(stats(parse(text))); },
        py::arg("record"));

  m.def("grid", [](const std::string& text) {
    py::list rows;
    for (const GridRow& r : parse(text).grid.rows) {
      py::list cells;
      for (std::uint8_t v : r.cells) cells.append(static_cast<int>(v));
      rows.append(py::make_tuple(cells, r.is_diagonal));
    }
    return rows;
  }, py::arg("record"), "Rows as (cells, is_diagonal) pairs, top to bottom.");

  m.def("enumerate_count",
        [](int n, int cap) { return enumerate_count(n, cap); },
        py::arg("n"), py::arg("cap") = kDefaultEnumCap);

  m.def("enumerate", [](int n, int cap) {
    std::vector<std::string> out;
    enumerate_all(n, [&](const TableauView& v) {
      out.push_back(serialize(GrowthHistory{v.steps, v.fills}));
    }, cap);
    return out;
  }, py::arg("n"), py::arg("cap") = kDefaultEnumCap);

  m.def("brute_mean", [](int n, const std::string& stat, int cap) {
    return frac(brute_expectation(n, stat_field_from_name(stat), cap).mean);
  }, py::arg("n"), py::arg("stat"), py::arg("cap") = kDefaultEnumCap);

  m.def("expected_rows", [](int n) { return frac(expected_rows(n)); });
  m.def("expected_unrestricted", [](int n) { return frac(expected_unrestricted(n)); });
  m.def("expected_diagonal_ones", [](int n) { return frac(expected_diag_ones(n)); });
  m.def("expected_ss_pairs", [](int n) { return frac(expected_ss(n)); });
  m.def("expected_ww_pairs", [](int n) { return frac(expected_ww(n)); });
  m.def("p_south", [](int n, int k) { return frac(p_south(n, k)); });
  m.def("p_ss", [](int n, int k) { return frac(p_ss(n, k)); });
  m.def("p_ww", [](int n, int k) { return frac(p_ww(n, k)); });
  m.def("p_g1", [](int n, int k) { return frac(p_g1(n, k)); });
  m.def("u_moment", [](int m_, int a) { return frac(u_moment(m_, a)); });

  m.def("sample_uniform", [](int n, std::uint64_t seed, std::size_t count) {
    UChainTable table = build_uchain(n);
    Rng rng(seed);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(serialize(sample_uniform_history(table, rng)));
    return out;
  }, py::arg("n"), py::arg("seed"), py::arg("count") = std::size_t{1});

  m.def("estimate", [](int n, const std::vector<std::string>& stat_names, std::size_t samples,
                       std::uint64_t seed) {
    std::vector<StatField> fields;
    for (const std::string& s : stat_names) fields.push_back(stat_field_from_name(s));
    py::list out;
    for (const EstimateReport& r : estimate_many(n, fields, samples, seed)) {
      py::dict d;
      d["statistic"] = r.statistic;
      d["n"] = r.n;
      d["num_samples"] = r.num_samples;
      d["seed"] = r.seed;
      d["weighted_mean"] = r.weighted_mean;
      d["std_error"] = r.std_error;
      d["ess"] = r.ess;
      d["mean_weight"] = r.mean_weight;
      d["mean_weight_se"] = r.mean_weight_se;
      out.append(std::move(d));
    }
    return out;
  }, py::arg("n"), py::arg("stats"), py::arg("samples"), py::arg("seed"));

  m.def("border_to_state", [](const std::string& border) {
    std::vector<Step> steps;
    for (char c : border) {
      if (c != 'S' && c != 'W') fail(Errc::parse_error, "border steps must be 'S' or 'W'");
      steps.push_back(c == 'S' ? Step::south : Step::west);
    }
    return state_to_bits(border_to_state(steps));
  }, py::arg("border"));

  m.def("pasep_stationary", [](int m_, double alpha, double beta, double q) {
    Eigen::VectorXd pi = stationary(m_, PasepParams{alpha, beta, q});
    return std::vector<double>(pi.data(), pi.data() + pi.size());
  }, py::arg("sites"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0, py::arg("q") = 0.0);

  m.def("pasep_simulate", [](int m_, double alpha, double beta, double q, double horizon,
                             std::uint64_t seed) {
    SimResult r = simulate(m_, PasepParams{alpha, beta, q}, horizon, seed);
    py::dict d;
    d["occupancy"] = r.occupancy;
    d["occupancy_se"] = r.occupancy_se;
    d["num_jumps"] = r.num_jumps;
    d["total_time"] = r.total_time;
    return d;
  }, py::arg("sites"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0, py::arg("q") = 0.0,
     py::arg("horizon") = 1000.0, py::arg("seed") = 0);
}
