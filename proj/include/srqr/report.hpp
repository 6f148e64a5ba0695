#pragma once

#include <json.hpp>

#include "srqr/cur_cx.hpp"
#include "srqr/flops.hpp"
#include "srqr/matrix.hpp"
#include "srqr/srqr.hpp"

namespace srqr {

/// Version of the JSON layout written by the command-line tool.
inline constexpr int kReportSchemaVersion = 1;

// Conversions found by nlohmann::json through argument-dependent lookup.
// Non-finite reals are written as null.
void to_json(nlohmann::json& j, const Permutation& p);
void to_json(nlohmann::json& j, const FlopCounter& f);
void to_json(nlohmann::json& j, const BoundCheck& c);
void to_json(nlohmann::json& j, const BoundReport& r);
void to_json(nlohmann::json& j, const SRQRDiagnostics& d);
void to_json(nlohmann::json& j, const CURDecomposition& d);
void to_json(nlohmann::json& j, const CXDecomposition& d);

Permutation permutation_from_json(const nlohmann::json& j);

}  // namespace srqr
