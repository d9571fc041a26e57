// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "marcinlab/bilinear.hpp"
#include "marcinlab/counterexamples.hpp"
#include "marcinlab/grid.hpp"
#include "marcinlab/lorentz.hpp"
#include "marcinlab/maximal.hpp"
#include "marcinlab/symbol_tools.hpp"

namespace marcinlab {

using Json = nlohmann::json;

// Complex payloads are [re, im] pairs everywhere.
Json complex_vector_to_json(const ComplexVector& v);
ComplexVector complex_vector_from_json(const Json& j);

Json sample_vector_to_json(const SampleVector& f);
SampleVector sample_vector_from_json(const Json& j);

// {"rows":M,"cols":N,"row_offset":r,"col_offset":s,"data":[[re,im],...]}
Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

Json norm_estimate_to_json(const NormEstimate& e);
Json h_estimate_to_json(const HEstimate& e);

// {"kind":"log","theta":2.0} | {"kind":"loglog","theta":1.5} |
// {"kind":"explicit","values":[...]}
Json weight_spec_to_json(const WeightSequence& w);
WeightSequence weight_from_spec_json(const Json& j, std::size_t length);

// {"n":1,"M":...,"L":...,"values":[[re,im],...]}
Json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);

// {"n":1,"M":...,"L":...,"table":[[re,im],...]} row-major over (xi, eta).
Json symbol_table_to_json(const Symbol& s);
Symbol symbol_table_from_json(const Json& j);

Json coefficient_table_to_json(const CoefficientTable& t);

Json boundedness_report_to_json(const BoundednessReport& r);
Json counterexample_report_to_json(const CounterexampleReport& r);

}  // namespace marcinlab
