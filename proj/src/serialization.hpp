// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_SERIALIZATION_HPP
#define FOCKLAB_SERIALIZATION_HPP

#include <json.hpp>

#include "bec.hpp"
#include "meanfield.hpp"
#include "quantize.hpp"

namespace focklab {

using Json = nlohmann::json;

// Vectors: {"d", "n_max", "epsilon", "entries": [[alpha, re, im], ...]}
Json vector_to_json(const FockVector& v);
FockVector vector_from_json(const Json& j);

// Operators: {"d", "n_max", "epsilon", "entries": [[alpha_out, alpha_in, re, im], ...]}
Json block_operator_to_json(const BlockOperator& op);
Json dense_operator_to_json(const DenseOperator& op);
DenseOperator dense_operator_from_json(const Json& j);

// Symbols: {"terms": [[beta, gamma, re, im], ...], "p": ..., "q": ...}
// p/q are null for inhomogeneous symbols.
Json symbol_to_json(const PolySymbol& b);
PolySymbol symbol_from_json(const Json& j);

// Trig symbols: {"atoms": [[re_c, im_c, [xi interleaved re,im ...]], ...]}
Json trig_to_json(const TrigSymbol& b);
TrigSymbol trig_from_json(const Json& j);

// Models: {"A": ..., "Qtensor": ..., "epsilon": ..., "n_max": ..., "V_norm": ...}
// with matrices as row-major nested arrays of [re, im] pairs.
Json model_to_json(const ModelSpec& m);
ModelSpec model_from_json(const Json& j);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

// Deterministic float formatting shared by every CSV writer.
std::string format_double(double x);

}  // namespace focklab

#endif
