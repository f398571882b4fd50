#pragma once

#include <string>

#include "equiv/matrix.hpp"
#include "equiv/mc.hpp"
#include "equiv/tensor.hpp"

namespace equiv {

// Wire formats. Entries are [re, im] pairs, row-major; for operators the
// upper multi-index runs first (color 0 most significant), then the lower.
// The ordering is part of the contract.

std::string matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json_text(const std::string& text);

std::string tensor_to_json(const Tensor<Cplx>& t);
Tensor<Cplx> tensor_from_json_text(const std::string& text);

std::string top_to_json(const TOp<Cplx>& p);
TOp<Cplx> top_from_json_text(const std::string& text);

// {"mean":[re,im],"stderr":x,"n":k}
std::string estimate_to_json(const Estimate& e);
Estimate estimate_from_json_text(const std::string& text);

}  // namespace equiv
