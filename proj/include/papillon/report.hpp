#pragma once

#include <string>

#include "json.hpp"
#include "papillon/analysis.hpp"

namespace papillon {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Canonical report pieces. Keys are fixed; nlohmann's default object keeps
// them sorted, so identical inputs serialize to identical bytes.
nlohmann::json config_json(const TopologyParams& params, const StrategyConfig* cfg,
                           const std::string& subcommand);
nlohmann::json topology_json(const Topology& topo);
nlohmann::json stats_json(const StatsSummary& stats);
nlohmann::json loads_json(const LoadProfile& loads);
nlohmann::json checks_json(const std::vector<BoundCheck>& checks);
nlohmann::json route_json(const Topology& topo, const Route& r,
                          const std::vector<Phase>* labels);
nlohmann::json witness_json(const WitnessScan& scan);

nlohmann::json analyze_report(const Topology& topo, const StrategyConfig& cfg,
                              const AllPairsResult& result,
                              const std::vector<BoundCheck>& checks,
                              const WitnessScan* greedy_bfs);
nlohmann::json compare_report(const Topology& topo, const CompareResult& result);

std::string report_csv(const nlohmann::json& report);
std::string report_text(const nlohmann::json& report);
std::string route_text(const Topology& topo, const Route& r,
                       const std::vector<Phase>* labels);
std::string topology_text(const Topology& topo);

bool any_assertive_failure(const std::vector<BoundCheck>& checks);

} // namespace papillon
