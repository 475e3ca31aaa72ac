#include "balldesign/design_io.hpp"

#include <stdexcept>

namespace balldesign {
namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw std::invalid_argument(std::string("missing JSON field '") + name + "'");
    }
    return j.at(name);
}

}  // namespace

json to_json(const Certificate& cert) {
    return {{"max_sensitivity", cert.max_sensitivity},
            {"argmax_point", vector_json(cert.argmax_point)},
            {"bound", cert.bound},
            {"grid_points", cert.grid_points},
            {"passed", cert.passed},
            {"support_equality_gap", cert.support_equality_gap},
            {"slack", cert.slack}};
}

Certificate certificate_from_json(const json& j) {
    try {
        Certificate c;
        c.max_sensitivity = field(j, "max_sensitivity").get<double>();
        c.argmax_point = vector_from(field(j, "argmax_point"));
        c.bound = field(j, "bound").get<double>();
        c.grid_points = field(j, "grid_points").get<long>();
        c.passed = field(j, "passed").get<bool>();
        c.support_equality_gap = field(j, "support_equality_gap").get<double>();
        c.slack = field(j, "slack").get<double>();
        return c;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad certificate JSON: ") + e.what());
    }
}

json to_json(const DesignRecord& rec) {
    json points = json::array();
    for (const auto& p : rec.design.points) points.push_back(vector_json(p));
    json out = {{"k", rec.k},
                {"model", rec.model},
                {"beta", rec.beta},
                {"x12", nullptr},
                {"points", std::move(points)},
                {"weights", rec.design.weights},
                {"certificate", nullptr}};
    if (rec.x12) out["x12"] = *rec.x12;
    if (rec.certificate) out["certificate"] = to_json(*rec.certificate);
    return out;
}

DesignRecord design_record_from_json(const json& j) {
    try {
        DesignRecord rec;
        rec.k = field(j, "k").get<int>();
        rec.model = field(j, "model").get<std::string>();
        rec.beta = field(j, "beta").get<std::vector<double>>();
        if (const auto& x = field(j, "x12"); !x.is_null()) rec.x12 = x.get<double>();
        for (const auto& p : field(j, "points")) rec.design.points.push_back(vector_from(p));
        rec.design.weights = field(j, "weights").get<std::vector<double>>();
        if (j.contains("certificate") && !j.at("certificate").is_null()) {
            rec.certificate = certificate_from_json(j.at("certificate"));
        }
        if (static_cast<int>(rec.beta.size()) != rec.k + 1) {
            throw std::invalid_argument("beta must have k+1 entries");
        }
        if (rec.design.dimension() != rec.k) {
            throw std::invalid_argument("design points must have k coordinates");
        }
        rec.design.validate();
        return rec;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad design JSON: ") + e.what());
    }
}

EllipsoidRegion region_from_json(const json& j) {
    try {
        EllipsoidRegion r;
        r.center = vector_from(field(j, "center"));
        const auto& rows = field(j, "axes");
        const auto k = r.center.size();
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != k) {
            throw std::invalid_argument("axes must have one row per coordinate");
        }
        r.axes.resize(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            const Eigen::VectorXd row = vector_from(rows.at(i));
            if (row.size() != k) throw std::invalid_argument("axes must be square");
            r.axes.row(i) = row.transpose();
        }
        r.validate();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad region JSON: ") + e.what());
    }
}

}  // namespace balldesign
