// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/serialize.hpp"

#include <stdexcept>

namespace marcinlab {

Json complex_vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const Complex& c : v) out.push_back(Json::array({c.real(), c.imag()}));
  return out;
}

ComplexVector complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of [re, im] pairs");
  ComplexVector out;
  out.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("complex entries must be [re, im] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

Json sample_vector_to_json(const SampleVector& f) { return complex_vector_to_json(f.values); }

SampleVector sample_vector_from_json(const Json& j) {
  ComplexVector v = complex_vector_from_json(j);
  const DyadicSpace space = DyadicSpace::from_size(v.size());
  return SampleVector(space, std::move(v));
}

Json matrix_to_json(const Matrix& a) {
  Json j;
  j["rows"] = a.rows;
  j["cols"] = a.cols;
  j["row_offset"] = a.row_offset;
  j["col_offset"] = a.col_offset;
  j["data"] = complex_vector_to_json(a.entries);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  Matrix a(j.at("rows").get<int>(), j.at("cols").get<int>(),
           j.value("row_offset", 0), j.value("col_offset", 0));
  ComplexVector data = complex_vector_from_json(j.at("data"));
  if (data.size() != a.entries.size()) {
    throw std::invalid_argument("matrix data length does not match rows*cols");
  }
  a.entries = std::move(data);
  return a;
}

Json norm_estimate_to_json(const NormEstimate& e) {
  Json j;
  j["quantity"] = e.quantity;
  j["p"] = e.p;
  if (e.q > 0.0) j["q"] = e.q;
  j["lower_bound"] = e.lower_bound;
  j["witness"] = complex_vector_to_json(e.witness);
  j["witness_levels"] = e.witness_levels;
  if (e.weak_threshold) j["weak_threshold"] = *e.weak_threshold;
  if (e.upper_bound) {
    j["upper_bound"] = *e.upper_bound;
    j["upper_provenance"] = e.upper_provenance;
  }
  if (e.lorentz_functional) j["lorentz_functional"] = *e.lorentz_functional;
  j["iterations"] = e.iterations;
  j["restarts"] = e.restarts;
  j["seed"] = e.seed;
  j["converged"] = e.converged;
  return j;
}

Json h_estimate_to_json(const HEstimate& e) {
  Json j;
  j["combined"] = norm_estimate_to_json(e.combined);
  j["lower_triangle"] = norm_estimate_to_json(e.lower_part);
  j["upper_triangle_transposed"] = norm_estimate_to_json(e.upper_part);
  j["sup_norm"] = e.sup_norm;
  return j;
}

Json weight_spec_to_json(const WeightSequence& w) {
  Json j;
  j["kind"] = weight_kind_name(w.kind);
  if (w.kind == WeightKind::explicit_values) {
    j["values"] = w.values;
  } else {
    j["theta"] = w.theta;
  }
  return j;
}

WeightSequence weight_from_spec_json(const Json& j, std::size_t length) {
  const WeightKind kind = weight_kind_from_name(j.at("kind").get<std::string>());
  if (kind == WeightKind::explicit_values) {
    return make_weight_explicit(j.at("values").get<std::vector<double>>());
  }
  return make_weight(kind, j.at("theta").get<double>(), length);
}

Json grid_function_to_json(const GridFunction& f) {
  Json j;
  j["n"] = f.grid().dimension;
  j["M"] = f.grid().points;
  j["L"] = f.grid().period;
  j["values"] = complex_vector_to_json(f.values());
  return j;
}

GridFunction grid_function_from_json(const Json& j) {
  PeriodicGrid grid(j.at("M").get<int>(), j.value("L", 1.0), j.value("n", 1));
  return GridFunction(grid, complex_vector_from_json(j.at("values")));
}

Json symbol_table_to_json(const Symbol& s) {
  if (!s.is_table()) throw std::invalid_argument("only table symbols can be serialized");
  const PeriodicGrid& g = s.table_grid();
  ComplexVector table(static_cast<std::size_t>(g.points) * g.points);
  for (int a = 0; a < g.points; ++a) {
    for (int b = 0; b < g.points; ++b) {
      table[static_cast<std::size_t>(a) * g.points + b] = s.eval_index(g, a, b);
    }
  }
  Json j;
  j["n"] = g.dimension;
  j["M"] = g.points;
  j["L"] = g.period;
  j["table"] = complex_vector_to_json(table);
  j["band_truncated"] = s.band_truncated();
  return j;
}

Symbol symbol_table_from_json(const Json& j) {
  PeriodicGrid grid(j.at("M").get<int>(), j.value("L", 1.0), j.value("n", 1));
  Symbol s = Symbol::from_table(grid, complex_vector_from_json(j.at("table")), "loaded");
  s.set_band_truncated(j.value("band_truncated", false));
  return s;
}

Json coefficient_table_to_json(const CoefficientTable& t) {
  Json j;
  j["cutoff"] = t.cutoff;
  j["quadrature_points"] = t.quadrature_points;
  Json blocks = Json::array();
  for (const CoefficientBlock& b : t.blocks) {
    Json jb;
    jb["j"] = b.j;
    jb["k"] = b.k;
    jb["coeffs"] = complex_vector_to_json(b.coeffs);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Json boundedness_report_to_json(const BoundednessReport& r) {
  Json j;
  j["p1"] = r.p1;
  j["p2"] = r.p2;
  j["p0"] = r.p0;
  j["mode"] = r.mode;
  j["certificate"] = r.certificate;
  j["witness_f"] = complex_vector_to_json(r.witness_f);
  j["witness_g"] = complex_vector_to_json(r.witness_g);
  j["grid_points"] = r.grid_points;
  j["grid_period"] = r.grid_period;
  if (r.weak_threshold) j["weak_threshold"] = *r.weak_threshold;
  if (r.h_functional) j["h_functional"] = *r.h_functional;
  if (r.ratio) j["ratio"] = *r.ratio;
  j["iterations"] = r.iterations;
  j["seed"] = r.seed;
  j["converged"] = r.converged;
  j["periodization_caveat"] = r.periodization_caveat;
  return j;
}

Json counterexample_report_to_json(const CounterexampleReport& r) {
  Json j;
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["rows"] = r.rows;
  j["cols"] = r.cols;
  j["ratio"] = r.ratio;
  j["target"] = r.target;
  j["exact_match"] = r.exact_match;
  return j;
}

}  // namespace marcinlab
