#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "balldesign/design.hpp"
#include "balldesign/ellipsoid.hpp"
#include "balldesign/verify.hpp"

namespace balldesign {

/// Serialised design: {"k", "model", "beta", "x12", "points", "weights", "certificate"}.
/// x12 is null for the zero-slope simplex design; certificate is null when not computed.
struct DesignRecord {
    int k = 0;
    std::string model;
    std::vector<double> beta;
    std::optional<double> x12;
    Design design;
    std::optional<Certificate> certificate;
};

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DesignRecord& rec);
/// Throws std::invalid_argument on missing fields or inconsistent sizes.
DesignRecord design_record_from_json(const nlohmann::json& j);

/// {"center": [...], "axes": [[...], ...]}
EllipsoidRegion region_from_json(const nlohmann::json& j);

}  // namespace balldesign
