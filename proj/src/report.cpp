#include "demreg/report.hpp"

namespace demreg {

nlohmann::json to_json(const ErrorReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["mean_diff"] = report.mean_diff;
    j["mean_diff_pct"] = report.mean_diff_pct;
    j["rmse"] = report.rmse;
    j["tsc"] = report.tsc ? nlohmann::json(*report.tsc) : nlohmann::json(nullptr);
    j["t_stat"] = report.t_defined ? nlohmann::json(report.t_stat) : nlohmann::json(nullptr);
    j["dof"] = report.dof;
    j["t_defined"] = report.t_defined;
    return j;
}

nlohmann::json to_json(const Correspondence& correspondence) {
    nlohmann::json j;
    j["offset"] = {correspondence.translation.drow, correspondence.translation.dcol};
    j["support"] = correspondence.translation.support;
    j["max_edge_error"] = correspondence.max_edge_error;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [node, match] : correspondence.pairs) {
        nlohmann::json p;
        p["node"] = node;
        p["cell"] = {match.row, match.col};
        p["residual"] = match.residual;
        pairs.push_back(std::move(p));
    }
    j["pairs"] = std::move(pairs);
    return j;
}

} // namespace demreg
