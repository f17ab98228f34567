// wsnlife: command-line front end for the gain, disk, routing and
// comparison experiments. See README.md for the full reference.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnlife/experiments.hpp"

namespace {

using namespace wsnlife;

struct PhyFlags {
  double power_dbm = 10.0;
  double noise_dbm = -70.0;
  double alpha = 4.0;
  double gamma0_db = 10.0;
  int packet_length = 100;
  double wavelength = 0.125;
  double density = 0.05;

  PhyParams to_phy() const {
    PhyParams p;
    p.power_w = dbm_to_watts(power_dbm);
    p.noise_w = dbm_to_watts(noise_dbm);
    p.alpha = alpha;
    p.snr_threshold = db_to_linear(gamma0_db);
    p.packet_length = packet_length;
    p.wavelength_m = wavelength;
    p.density = density;
    p.validate();
    return p;
  }
};

// Writes to `path`, or stdout when empty.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open output file '" + path + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless sensor network lifetime with cooperative links"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  PhyFlags phy_flags;
  app.add_option("--config", config_path, "JSON config; its keys override flags")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--workers", workers, "Worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--power-dbm", phy_flags.power_dbm, "Transmit power P [dBm]")->capture_default_str();
  app.add_option("--noise-dbm", phy_flags.noise_dbm, "Noise power [dBm]")->capture_default_str();
  app.add_option("--alpha", phy_flags.alpha, "Path-loss exponent")->capture_default_str();
  app.add_option("--gamma0-db", phy_flags.gamma0_db, "Link SNR threshold [dB]")->capture_default_str();
  app.add_option("--packet-length", phy_flags.packet_length, "Symbols per packet")->capture_default_str();
  app.add_option("--wavelength", phy_flags.wavelength, "Carrier wavelength [m]")->capture_default_str();
  app.add_option("--density", phy_flags.density, "Node density [1/m^2]")->capture_default_str();

  // gain
  auto* gain = app.add_subcommand("gain", "Average CT/CB gain versus cluster radius");
  std::string gain_mode = "ct";
  ExperimentConfig gain_cfg;
  gain->add_option("--mode", gain_mode, "ct or cb")->check(CLI::IsMember({"ct", "cb"}))->capture_default_str();
  gain->add_option("--nodes", gain_cfg.cluster_nodes, "Cluster size N")->capture_default_str();
  gain->add_option("--distance", gain_cfg.destination_distance, "Cluster-destination distance A [m]")
      ->capture_default_str();
  gain->add_option("--radii", gain_cfg.radii, "Cluster radii R [m]");
  gain->add_option("--trials", gain_cfg.trials, "Monte Carlo trials per radius")->capture_default_str();

  // disk
  auto* disk = app.add_subcommand("disk", "Bypass optimization on the uniform disk");
  ExperimentConfig disk_cfg;
  std::string disk_mode = "ideal";
  std::string rings_out;
  disk->add_option("--ratios", disk_cfg.disk_ratios, "Disk radii B0/A0");
  disk->add_option("--grid", disk_cfg.grid, "Number of rings G")->capture_default_str();
  disk->add_option("--mode", disk_mode, "Cluster model: ideal, cb or ct")
      ->check(CLI::IsMember({"ideal", "cb", "ct"}))
      ->capture_default_str();
  disk->add_flag("--fractional", disk_cfg.fractional_clusters, "Real-valued cluster sizes (ideal mode)");
  disk->add_option("--rings-out", rings_out, "Also write the per-ring curves to this file");

  // lp
  auto* lp = app.add_subcommand("lp", "Max-min lifetime LP on a topology file");
  std::string lp_topology;
  bool no_coop = false;
  std::string trace_path;
  bool trace_tableau = false;
  lp->add_option("--topology", lp_topology, "Topology JSON")->required()->check(CLI::ExistingFile);
  lp->add_flag("--no-coop", no_coop, "Direct links only");
  lp->add_option("--trace", trace_path, "Write the simplex pivot log to this file");
  lp->add_flag("--trace-tableau", trace_tableau, "Include the full tableau after every pivot");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Dynamic-cost routing simulation on a topology file");
  std::string sim_topology;
  CostParams cost;
  TrafficSpec traffic;
  bool poisson = false;
  bool sim_no_coop = false;
  sim->add_option("--topology", sim_topology, "Topology JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--beta1", cost.beta1, "Sender barrier exponent")->capture_default_str();
  sim->add_option("--beta2", cost.beta2, "Helper barrier exponent")->capture_default_str();
  sim->add_option("--granularity", traffic.granularity, "Packets per unit rate per round")
      ->capture_default_str();
  sim->add_option("--max-rounds", traffic.max_rounds, "Round cap")->capture_default_str();
  sim->add_flag("--poisson", poisson, "Poisson packet counts instead of fixed rates");
  sim->add_flag("--no-coop", sim_no_coop, "Direct links only");

  // compare
  auto* cmp = app.add_subcommand("compare", "Shortest path vs LP vs cooperative LP on random networks");
  ExperimentConfig cmp_cfg;
  std::string instances_out;
  cmp->add_option("--nodes", cmp_cfg.node_counts, "Node counts (sink included)");
  cmp->add_option("--instances", cmp_cfg.n_instances, "Random instances per node count")->capture_default_str();
  cmp->add_option("--field", cmp_cfg.field_size, "Square side [m]")->capture_default_str();
  cmp->add_flag("--dynamic", cmp_cfg.include_dynamic, "Also run the dynamic-cost heuristic");
  cmp->add_option("--beta1", cmp_cfg.cost.beta1, "Sender barrier exponent")->capture_default_str();
  cmp->add_option("--beta2", cmp_cfg.cost.beta2, "Helper barrier exponent")->capture_default_str();
  cmp->add_option("--instances-out", instances_out, "Also write per-instance rows to this file");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig snapshot_cfg;
  snapshot_cfg.kind = ExperimentKind::snapshot;

  try {
    const PhyParams phy = phy_flags.to_phy();
    auto finish = [&](ExperimentConfig c) {
      c.phy = phy;
      c.seed = seed;
      c.workers = workers;
      c.output = out_path;
      if (!config_path.empty()) c = load_config(config_path, c);
      c.validate();
      return c;
    };

    if (*gain) {
      gain_cfg.kind = gain_mode == "cb" ? ExperimentKind::gain_cb : ExperimentKind::gain_ct;
      const auto c = finish(gain_cfg);
      const auto table = run_gain(c);
      emit(c.output, [&](std::ostream& os) { write_csv(os, table); });
    } else if (*disk) {
      disk_cfg.kind = ExperimentKind::disk;
      disk_cfg.disk_mode = parse_cluster_mode(disk_mode);
      const auto c = finish(disk_cfg);
      const auto report = run_disk(c);
      emit(c.output, [&](std::ostream& os) { write_csv(os, report.summary); });
      if (!rings_out.empty()) emit(rings_out, [&](std::ostream& os) { write_csv(os, report.rings); });
    } else if (*cmp) {
      cmp_cfg.kind = ExperimentKind::compare;
      const auto c = finish(cmp_cfg);
      const auto report = run_compare(c);
      for (const auto& s : report.skipped) std::cerr << "skipped " << s << '\n';
      emit(c.output, [&](std::ostream& os) { write_csv(os, report.means); });
      if (!instances_out.empty()) {
        emit(instances_out, [&](std::ostream& os) { write_csv(os, report.instances); });
      }
    } else if (*lp) {
      ExperimentConfig c = finish(snapshot_cfg);
      const auto topo = load_topology(lp_topology, c.phy);
      const auto links = build_links(topo.network, topo.phy);
      SimplexOptions opt;
      std::ofstream trace;
      if (!trace_path.empty()) {
        trace.open(trace_path);
        if (!trace) throw InvalidInput("cannot open trace file '" + trace_path + "'");
        opt.trace = &trace;
        opt.trace_tableau = trace_tableau;
      }
      const auto sol = solve_lifetime_lp(topo.network, links, !no_coop, opt);
      emit(c.output, [&](std::ostream& os) {
        os << flow_solution_to_json(topo.network, links, sol).dump(2) << '\n';
      });
      if (sol.status != LPStatus::optimal) {
        std::cerr << "error: lifetime LP " << to_string(sol.status) << '\n';
        return 2;
      }
    } else if (*sim) {
      ExperimentConfig c = finish(snapshot_cfg);
      const auto topo = load_topology(sim_topology, c.phy);
      auto links = build_links(topo.network, topo.phy);
      if (sim_no_coop) links.cooperative.clear();
      traffic.kind = poisson ? TrafficSpec::Kind::poisson : TrafficSpec::Kind::fixed;
      const auto res = simulate_dynamic(topo.network, links, cost, traffic, c.seed);
      const nlohmann::json j{{"lifetime", res.lifetime},
                             {"rounds_completed", res.rounds_completed},
                             {"packets_delivered", res.packets_delivered},
                             {"network_died", res.network_died},
                             {"beta1", cost.beta1},
                             {"beta2", cost.beta2},
                             {"seed", c.seed}};
      emit(c.output, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }
  } catch (const wsnlife::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
