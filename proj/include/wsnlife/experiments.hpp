#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wsnlife/disk_analysis.hpp"
#include "wsnlife/errors.hpp"
#include "wsnlife/gain_models.hpp"
#include "wsnlife/parallel.hpp"
#include "wsnlife/routing.hpp"
#include "wsnlife/topology_io.hpp"
#include "wsnlife/units.hpp"

namespace wsnlife {

inline constexpr const char* kVersion = "0.1.0";

/// Radio setup of the desk-scale experiments: 10 dBm transmit power,
/// -70 dBm noise, alpha = 4, 10 dB link threshold, 100-symbol packets.
inline PhyParams reference_phy() {
  PhyParams p;
  p.power_w = dbm_to_watts(10.0);
  p.noise_w = dbm_to_watts(-70.0);
  p.alpha = 4.0;
  p.snr_threshold = db_to_linear(10.0);
  p.packet_length = 100;
  return p;
}

// ---------------------------------------------------------------------------
// Result tables
// ---------------------------------------------------------------------------

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
      throw DimensionMismatch("ResultTable: row width " + std::to_string(row.size()) +
                              " != " + std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw InvalidInput("ResultTable: no column '" + name + "'");
  }
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Metadata as "# key: value" lines, then a header row and data rows.
inline void write_csv(std::ostream& os, const ResultTable& t, bool with_metadata = true) {
  if (with_metadata) {
    for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

inline std::string to_csv(const ResultTable& t, bool with_metadata = true) {
  std::ostringstream os;
  write_csv(os, t, with_metadata);
  return os.str();
}

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

enum class ExperimentKind { gain_ct, gain_cb, disk, snapshot, compare };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::gain_ct: return "gain-ct";
    case ExperimentKind::gain_cb: return "gain-cb";
    case ExperimentKind::disk: return "disk";
    case ExperimentKind::snapshot: return "snapshot";
    case ExperimentKind::compare: return "compare";
  }
  return "?";
}

inline ExperimentKind parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::gain_ct, ExperimentKind::gain_cb, ExperimentKind::disk,
                 ExperimentKind::snapshot, ExperimentKind::compare}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidInput("unknown experiment kind '" + std::string(s) + "'");
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::compare;
  PhyParams phy = reference_phy();
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output;

  // gain sweeps
  int cluster_nodes = 10;
  double destination_distance = 1000.0;
  std::vector<double> radii{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::size_t trials = 100000;

  // disk analysis; disk radii are in units of the hop range
  std::vector<double> disk_ratios{2, 4, 6, 8, 10};
  double hop_range = 1.0;
  int grid = 100;
  ClusterMode disk_mode = ClusterMode::ideal;
  bool fractional_clusters = false;

  // random networks
  double field_size = 100.0;
  std::vector<int> node_counts{10, 15, 20, 25, 30};
  int n_instances = 50;
  bool include_dynamic = false;
  CostParams cost{};
  int granularity = 100;

  void validate() const {
    phy.validate();
    if (n_instances < 1) throw InvalidInput("config: n_instances must be >= 1");
    if (trials < 1) throw InvalidInput("config: trials must be >= 1");
    if (!(field_size > 0)) throw InvalidInput("config: field_size must be > 0");
    for (int n : node_counts) {
      if (n < 2) throw InvalidInput("config: node counts must be >= 2");
    }
  }
};

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  return nlohmann::json{{"kind", std::string(to_string(c.kind))},
                        {"phy", phy_to_json(c.phy)},
                        {"seed", c.seed},
                        {"cluster_nodes", c.cluster_nodes},
                        {"destination_distance", c.destination_distance},
                        {"radii", c.radii},
                        {"trials", c.trials},
                        {"disk_ratios", c.disk_ratios},
                        {"hop_range", c.hop_range},
                        {"grid", c.grid},
                        {"disk_mode", std::string(to_string(c.disk_mode))},
                        {"fractional_clusters", c.fractional_clusters},
                        {"field_size", c.field_size},
                        {"node_counts", c.node_counts},
                        {"n_instances", c.n_instances},
                        {"include_dynamic", c.include_dynamic},
                        {"beta1", c.cost.beta1},
                        {"beta2", c.cost.beta2},
                        {"granularity", c.granularity}};
}

/// Overrides the fields of `base` that appear in `j` (same keys as
/// config_to_json; "phy" accepts the keys of phy_from_json).
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {}) {
  try {
    if (j.contains("kind")) base.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    if (j.contains("phy")) base.phy = phy_from_json(j.at("phy"), base.phy);
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) base.workers = j.at("workers").get<unsigned>();
    if (j.contains("output")) base.output = j.at("output").get<std::string>();
    if (j.contains("cluster_nodes")) base.cluster_nodes = j.at("cluster_nodes").get<int>();
    if (j.contains("destination_distance")) {
      base.destination_distance = j.at("destination_distance").get<double>();
    }
    if (j.contains("radii")) base.radii = j.at("radii").get<std::vector<double>>();
    if (j.contains("trials")) base.trials = j.at("trials").get<std::size_t>();
    if (j.contains("disk_ratios")) base.disk_ratios = j.at("disk_ratios").get<std::vector<double>>();
    if (j.contains("hop_range")) base.hop_range = j.at("hop_range").get<double>();
    if (j.contains("grid")) base.grid = j.at("grid").get<int>();
    if (j.contains("disk_mode")) base.disk_mode = parse_cluster_mode(j.at("disk_mode").get<std::string>());
    if (j.contains("fractional_clusters")) base.fractional_clusters = j.at("fractional_clusters").get<bool>();
    if (j.contains("field_size")) base.field_size = j.at("field_size").get<double>();
    if (j.contains("node_counts")) base.node_counts = j.at("node_counts").get<std::vector<int>>();
    if (j.contains("n_instances")) base.n_instances = j.at("n_instances").get<int>();
    if (j.contains("include_dynamic")) base.include_dynamic = j.at("include_dynamic").get<bool>();
    if (j.contains("beta1")) base.cost.beta1 = j.at("beta1").get<double>();
    if (j.contains("beta2")) base.cost.beta2 = j.at("beta2").get<double>();
    if (j.contains("granularity")) base.granularity = j.at("granularity").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  base.validate();
  return base;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config file '" + path + "': " + e.what());
  }
  return config_from_json(j, std::move(base));
}

inline std::vector<std::pair<std::string, std::string>> table_metadata(const ExperimentConfig& c) {
  return {{"wsnlife_version", kVersion}, {"config", config_to_json(c).dump()}};
}

// ---------------------------------------------------------------------------
// Random topologies
// ---------------------------------------------------------------------------

/// One sink (id 1, Q = -(n-1)) and n-1 sensors (ids 2..n, Q = 1), uniform in
/// a field x field square, unit energy everywhere.
inline Network generate_topology(int n, double field, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("generate_topology: n must be >= 2");
  if (!(field > 0)) throw InvalidInput("generate_topology: field must be > 0");
  std::mt19937_64 rng(seed);
  std::vector<SensorNode> nodes;
  for (int id = 1; id <= n; ++id) {
    SensorNode s;
    s.id = id;
    const double x = field * detail::unit_uniform(rng);
    const double y = field * detail::unit_uniform(rng);
    s.position = {x, y};
    s.rate = id == 1 ? -(n - 1.0) : 1.0;
    nodes.push_back(s);
  }
  return Network(std::move(nodes));
}

inline std::uint64_t instance_seed(std::uint64_t seed, int n_nodes, int instance) {
  return stream_seed(seed, static_cast<std::uint64_t>(n_nodes), static_cast<std::uint64_t>(instance));
}

// ---------------------------------------------------------------------------
// Experiment drivers
// ---------------------------------------------------------------------------

/// Closed form and Monte Carlo average gain over a sweep of cluster radii.
inline ResultTable run_gain(const ExperimentConfig& c) {
  c.validate();
  ResultTable t;
  t.metadata = table_metadata(c);
  const bool ct = c.kind != ExperimentKind::gain_cb;
  t.columns = ct ? std::vector<std::string>{"radius", "z", "closed_form", "mc_mean", "mc_stderr"}
                 : std::vector<std::string>{"radius", "r_over_lambda", "bound", "mc_mean", "mc_stderr"};
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    const ClusterGeometry geom{c.cluster_nodes, c.radii[i], c.destination_distance};
    const auto mc_seed = stream_seed(c.seed, i);
    if (ct) {
      const auto cf = ct_gain_closed_form(geom, c.phy);
      const auto mc = ct_gain_monte_carlo(geom, c.phy, c.trials, mc_seed, c.workers);
      t.add_row({geom.radius, detail::ct_argument(geom.radius, c.phy), cf.value, mc.value, mc.std_error});
    } else {
      const auto bound = cb_gain_bound(geom, c.phy);
      const auto mc = cb_gain_monte_carlo(geom, c.phy, c.trials, mc_seed, c.workers);
      t.add_row({geom.radius, geom.radius / c.phy.wavelength_m, bound.value, mc.value, mc.std_error});
    }
  }
  return t;
}

struct DiskReport {
  ResultTable rings;    // per ring, per disk size
  ResultTable summary;  // one row per disk size
};

inline DiskScenario disk_scenario(const ExperimentConfig& c, double ratio) {
  DiskScenario sc;
  sc.outer_radius = ratio * c.hop_range;
  sc.hop_range = c.hop_range;
  sc.grid = c.grid;
  sc.mode = c.disk_mode;
  sc.phy = c.phy;
  sc.fractional_clusters = c.fractional_clusters;
  return sc;
}

/// Forwarding, pure CB/CT and jointly optimized transmissions per node for
/// each disk size, plus the max-load summary.
inline DiskReport run_disk(const ExperimentConfig& c) {
  c.validate();
  DiskReport r;
  r.rings.metadata = table_metadata(c);
  r.summary.metadata = r.rings.metadata;
  r.rings.columns = {"b0_over_a0", "ring_radius", "n_pf", "n_pure", "n_joint", "p_r", "n_cluster"};
  r.summary.columns = {"b0_over_a0", "kappa", "max_njoint", "max_npf", "max_pure", "saving_percent"};
  std::vector<DiskReport> parts(c.disk_ratios.size());
  std::vector<std::vector<std::vector<double>>> ring_rows(c.disk_ratios.size());
  std::vector<std::vector<double>> summary_rows(c.disk_ratios.size());
  parallel_for(c.disk_ratios.size(), c.workers, [&](std::size_t i) {
    const double ratio = c.disk_ratios[i];
    const auto sc = disk_scenario(c, ratio);
    const auto joint = optimize_bypass(sc);
    const auto pure = uniform_profile(1.0, sc);
    for (int k = 0; k < sc.grid; ++k) {
      ring_rows[i].push_back({ratio, joint.ring_radius[k], joint.n_pf[k], pure.n_joint[k],
                              joint.n_joint[k], joint.p_r[k], joint.n_cluster[k]});
    }
    summary_rows[i] = {ratio, joint.kappa, joint.max_njoint(), joint.max_npf(), pure.max_njoint(),
                       saving_percent(joint)};
  });
  for (std::size_t i = 0; i < c.disk_ratios.size(); ++i) {
    for (auto& row : ring_rows[i]) r.rings.add_row(std::move(row));
    r.summary.add_row(std::move(summary_rows[i]));
  }
  return r;
}

struct CompareReport {
  ResultTable instances;
  ResultTable means;
  std::vector<std::string> skipped;  // one diagnostic per disconnected instance
};

/// Shortest-path, max-min LP and cooperative max-min LP lifetimes on random
/// networks; optionally the dynamic-cost heuristic as well.
inline CompareReport run_compare(const ExperimentConfig& c) {
  c.validate();
  CompareReport r;
  r.instances.metadata = table_metadata(c);
  r.means.metadata = r.instances.metadata;
  r.instances.columns = {"n_nodes", "instance", "shortest_path", "lp_nocoop", "lp_coop", "improvement"};
  r.means.columns = {"n_nodes",      "used",         "skipped",      "mean_shortest_path",
                     "mean_lp_nocoop", "mean_lp_coop", "mean_improvement", "improvement_of_means"};
  if (c.include_dynamic) {
    r.instances.columns.push_back("dynamic");
    r.means.columns.push_back("mean_dynamic");
  }

  struct Slot {
    bool used = false;
    std::string skip_reason;
    std::vector<double> row;
  };
  const std::size_t per_count = static_cast<std::size_t>(c.n_instances);
  std::vector<Slot> slots(c.node_counts.size() * per_count);
  parallel_for(slots.size(), c.workers, [&](std::size_t s) {
    const int n = c.node_counts[s / per_count];
    const int inst = static_cast<int>(s % per_count);
    const auto net = generate_topology(n, c.field_size, instance_seed(c.seed, n, inst));
    const auto links = build_links(net, c.phy);
    Slot& slot = slots[s];
    double sp = 0.0;
    try {
      sp = shortest_path_lifetime(net, links);
    } catch (const NoRoute& e) {
      slot.skip_reason = "n=" + std::to_string(n) + " instance=" + std::to_string(inst) +
                         ": disconnected (" + e.what() + ")";
      return;
    }
    const auto plain = solve_lifetime_lp(net, links, false);
    const auto coop = solve_lifetime_lp(net, links, true);
    slot.used = true;
    slot.row = {static_cast<double>(n), static_cast<double>(inst), sp, plain.lifetime, coop.lifetime,
                coop.lifetime / plain.lifetime - 1.0};
    if (c.include_dynamic) {
      TrafficSpec traffic;
      traffic.granularity = c.granularity;
      slot.row.push_back(
          simulate_dynamic(net, links, c.cost, traffic, instance_seed(c.seed ^ 0xd1ce, n, inst)).lifetime);
    }
  });

  for (std::size_t ci = 0; ci < c.node_counts.size(); ++ci) {
    KahanSum sp, plain, coop, imp, dyn;
    int used = 0;
    int skipped = 0;
    for (std::size_t k = 0; k < per_count; ++k) {
      auto& slot = slots[ci * per_count + k];
      if (!slot.used) {
        ++skipped;
        r.skipped.push_back(slot.skip_reason);
        continue;
      }
      ++used;
      sp += slot.row[2];
      plain += slot.row[3];
      coop += slot.row[4];
      imp += slot.row[5];
      if (c.include_dynamic) dyn += slot.row[6];
      r.instances.add_row(slot.row);
    }
    const double u = used > 0 ? used : std::numeric_limits<double>::quiet_NaN();
    std::vector<double> row{static_cast<double>(c.node_counts[ci]), static_cast<double>(used),
                            static_cast<double>(skipped), sp.value() / u, plain.value() / u,
                            coop.value() / u, imp.value() / u, coop.value() / plain.value() - 1.0};
    if (c.include_dynamic) row.push_back(dyn.value() / u);
    r.means.add_row(std::move(row));
  }
  return r;
}

}  // namespace wsnlife
