#pragma once

// Topology and flow-solution files (JSON).
//
// Topology:
//   {
//     "nodes": [ {"id": 1, "x": 0.0, "y": 0.0, "E": 1.0, "Q": -5.0}, ... ],
//     "phy":   { "power_dbm": 10, "noise_dbm": -70, "alpha": 4, "gamma0_db": 10, ... }
//   }
// "E_remaining" may be given per node (defaults to E). "phy" is optional; see
// phy_from_json for the accepted keys.
//
// Flow solution:
//   { "status": "optimal", "with_coop": true, "T": 0.333,
//     "flows": [ {"from": 6, "to": 1, "helpers": [5], "qhat": 0.667}, ... ],
//     "energy_used": [ {"id": 1, "energy": 0.0}, ... ] }
// Flows are listed for links with q-hat > 1e-12, ids are node ids.

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "wsnlife/errors.hpp"
#include "wsnlife/gain_models.hpp"
#include "wsnlife/routing.hpp"
#include "wsnlife/units.hpp"

namespace wsnlife {

using json = nlohmann::json;

/// Applies the keys present in `j` on top of `base`. Log-scale keys
/// (power_dbm, noise_dbm, gamma0_db) and linear keys (power_w, noise_w,
/// gamma0) are both accepted.
inline PhyParams phy_from_json(const json& j, PhyParams base = {}) {
  if (j.contains("power_dbm")) base.power_w = dbm_to_watts(j.at("power_dbm").get<double>());
  if (j.contains("power_w")) base.power_w = j.at("power_w").get<double>();
  if (j.contains("noise_dbm")) base.noise_w = dbm_to_watts(j.at("noise_dbm").get<double>());
  if (j.contains("noise_w")) base.noise_w = j.at("noise_w").get<double>();
  if (j.contains("gamma0_db")) base.snr_threshold = db_to_linear(j.at("gamma0_db").get<double>());
  if (j.contains("gamma0")) base.snr_threshold = j.at("gamma0").get<double>();
  if (j.contains("antenna_const")) base.antenna_const = j.at("antenna_const").get<double>();
  if (j.contains("alpha")) base.alpha = j.at("alpha").get<double>();
  if (j.contains("wavelength_m")) base.wavelength_m = j.at("wavelength_m").get<double>();
  if (j.contains("density")) base.density = j.at("density").get<double>();
  if (j.contains("packet_length")) base.packet_length = j.at("packet_length").get<int>();
  base.validate();
  return base;
}

inline json phy_to_json(const PhyParams& p) {
  return json{{"power_w", p.power_w},           {"noise_w", p.noise_w},
              {"antenna_const", p.antenna_const}, {"alpha", p.alpha},
              {"wavelength_m", p.wavelength_m},   {"density", p.density},
              {"packet_length", p.packet_length}, {"gamma0", p.snr_threshold}};
}

struct Topology {
  Network network;
  PhyParams phy;
};

inline Topology topology_from_json(const json& j, const PhyParams& default_phy = {}) {
  if (!j.contains("nodes") || !j.at("nodes").is_array()) {
    throw InvalidInput("topology: missing \"nodes\" array");
  }
  std::vector<SensorNode> nodes;
  for (const auto& e : j.at("nodes")) {
    SensorNode n;
    n.id = e.at("id").get<int>();
    n.position = {e.at("x").get<double>(), e.at("y").get<double>()};
    n.energy_init = e.value("E", 1.0);
    n.energy_remaining = e.value("E_remaining", n.energy_init);
    n.rate = e.value("Q", 0.0);
    nodes.push_back(n);
  }
  Topology t{Network(std::move(nodes)), default_phy};
  if (j.contains("phy")) t.phy = phy_from_json(j.at("phy"), default_phy);
  return t;
}

inline json topology_to_json(const Network& net, const PhyParams* phy = nullptr) {
  json nodes = json::array();
  for (const auto& n : net.nodes()) {
    json e{{"id", n.id}, {"x", n.position.x}, {"y", n.position.y}, {"E", n.energy_init}, {"Q", n.rate}};
    if (n.energy_remaining != n.energy_init) e["E_remaining"] = n.energy_remaining;
    nodes.push_back(e);
  }
  json j{{"nodes", nodes}};
  if (phy) j["phy"] = phy_to_json(*phy);
  return j;
}

inline Topology load_topology(const std::string& path, const PhyParams& default_phy = {}) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open topology file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("topology file '" + path + "': " + e.what());
  }
  try {
    return topology_from_json(j, default_phy);
  } catch (const json::exception& e) {
    throw InvalidInput("topology file '" + path + "': " + e.what());
  }
}

inline json flow_solution_to_json(const Network& net, const LinkSet& links, const FlowSolution& sol) {
  json flows = json::array();
  for (std::size_t k = 0; k < links.direct.size(); ++k) {
    if (sol.direct_flow[k] > 1e-12) {
      flows.push_back({{"from", net[links.direct[k].from].id},
                       {"to", net[links.direct[k].to].id},
                       {"helpers", json::array()},
                       {"qhat", sol.direct_flow[k]}});
    }
  }
  for (std::size_t k = 0; k < links.cooperative.size(); ++k) {
    if (sol.coop_flow[k] > 1e-12) {
      const auto& l = links.cooperative[k];
      json helpers = json::array();
      for (auto h : l.helpers) helpers.push_back(net[h].id);
      flows.push_back({{"from", net[l.from].id},
                       {"to", net[l.to].id},
                       {"helpers", helpers},
                       {"qhat", sol.coop_flow[k]}});
    }
  }
  json energy = json::array();
  for (std::size_t i = 0; i < net.size(); ++i) {
    energy.push_back({{"id", net[i].id}, {"energy", sol.energy_used.empty() ? 0.0 : sol.energy_used[i]}});
  }
  return json{{"status", std::string(to_string(sol.status))},
              {"with_coop", sol.with_coop},
              {"T", sol.lifetime},
              {"flows", flows},
              {"energy_used", energy}};
}

}  // namespace wsnlife
