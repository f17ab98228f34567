#include <sstream>

#include <gtest/gtest.h>

#include "wsnlife/experiments.hpp"

using namespace wsnlife;

TEST(GenerateTopology, ShapeAndDeterminism) {
  const auto two = generate_topology(2, 100.0, 1);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].rate, -1.0);
  EXPECT_EQ(two[1].rate, 1.0);

  const auto a = generate_topology(20, 100.0, 77);
  const auto b = generate_topology(20, 100.0, 77);
  const auto c = generate_topology(20, 100.0, 78);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].position.x, b[i].position.x);
    EXPECT_EQ(a[i].position.y, b[i].position.y);
    EXPECT_GE(a[i].position.x, 0.0);
    EXPECT_LE(a[i].position.x, 100.0);
    EXPECT_EQ(a[i].energy_init, 1.0);
  }
  EXPECT_NE(a[3].position.x, c[3].position.x);
  EXPECT_EQ(a[0].rate, -19.0);
  EXPECT_THROW(generate_topology(1, 100.0, 1), InvalidInput);
}

TEST(ResultTable, CsvLayout) {
  ResultTable t;
  t.columns = {"a", "b"};
  t.metadata = {{"k", "v"}};
  t.add_row({1.5, 2});
  EXPECT_EQ(to_csv(t), "# k: v\na,b\n1.5,2\n");
  EXPECT_EQ(to_csv(t, false), "a,b\n1.5,2\n");
  EXPECT_THROW(t.add_row({1.0}), DimensionMismatch);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_THROW(t.column("c"), InvalidInput);
}

TEST(Config, JsonRoundTripAndOverrides) {
  ExperimentConfig c;
  c.kind = ExperimentKind::disk;
  c.seed = 123;
  c.disk_ratios = {3, 5};
  c.disk_mode = ClusterMode::cb;
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.kind, ExperimentKind::disk);
  EXPECT_EQ(back.seed, 123u);
  EXPECT_EQ(back.disk_ratios, (std::vector<double>{3, 5}));
  EXPECT_EQ(back.disk_mode, ClusterMode::cb);
  EXPECT_NEAR(back.phy.power_w, 0.01, 1e-15);

  const auto j = nlohmann::json::parse(R"({"phy": {"power_dbm": 0}, "n_instances": 3})");
  const auto o = config_from_json(j, c);
  EXPECT_NEAR(o.phy.power_w, 1e-3, 1e-15);
  EXPECT_EQ(o.n_instances, 3);
  EXPECT_EQ(o.seed, 123u);  // untouched keys keep the base value

  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n_instances": 0})")), InvalidInput);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"kind": "nope"})")), InvalidInput);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"seed": "x"})")), InvalidInput);
  EXPECT_THROW(load_config("/nonexistent/cfg.json"), InvalidInput);
}

TEST(RunGain, SingleNodeColumnsAreOne) {
  ExperimentConfig c;
  c.kind = ExperimentKind::gain_ct;
  c.cluster_nodes = 1;
  c.trials = 100;
  const auto t = run_gain(c);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row[t.column("closed_form")], 1.0);
    EXPECT_EQ(row[t.column("mc_mean")], 1.0);
  }
  c.kind = ExperimentKind::gain_cb;
  c.radii = {1.0, 2.0};
  const auto cb = run_gain(c);
  for (const auto& row : cb.rows) EXPECT_EQ(row[cb.column("mc_mean")], 1.0);
}

TEST(RunGain, SeedRepeatIsIdentical) {
  ExperimentConfig c;
  c.kind = ExperimentKind::gain_ct;
  c.trials = 2000;
  EXPECT_EQ(to_csv(run_gain(c)), to_csv(run_gain(c)));
  auto d = c;
  d.seed = 2;
  EXPECT_NE(to_csv(run_gain(c), false), to_csv(run_gain(d), false));
}

TEST(RunDisk, CurvesAndSummary) {
  ExperimentConfig c;
  c.kind = ExperimentKind::disk;
  c.disk_ratios = {2, 4};
  const auto r = run_disk(c);
  ASSERT_EQ(r.summary.rows.size(), 2u);
  ASSERT_EQ(r.rings.rows.size(), 200u);
  for (const auto& row : r.summary.rows) {
    EXPECT_LE(row[r.summary.column("max_njoint")], row[r.summary.column("max_npf")]);
    EXPECT_GT(row[r.summary.column("saving_percent")], 80.0);
  }
  EXPECT_NEAR(r.summary.rows[0][r.summary.column("max_npf")], 52.0, 1e-9);
}

TEST(RunCompare, DominanceAndBookkeeping) {
  ExperimentConfig c;
  c.node_counts = {6, 12};
  c.n_instances = 8;
  c.include_dynamic = true;
  const auto r = run_compare(c);
  const auto& t = r.instances;
  for (const auto& row : t.rows) {
    EXPECT_GE(row[t.column("lp_coop")], row[t.column("lp_nocoop")] - 1e-9);
    EXPECT_GE(row[t.column("lp_nocoop")], row[t.column("shortest_path")] - 1e-9);
    EXPECT_GE(row[t.column("dynamic")], 0.0);
  }
  ASSERT_EQ(r.means.rows.size(), 2u);
  double total = 0;
  for (const auto& row : r.means.rows) total += row[1] + row[2];
  EXPECT_EQ(total, 16.0);
  EXPECT_EQ(t.rows.size() + r.skipped.size(), 16u);
}

TEST(RunCompare, MetadataEchoesConfig) {
  ExperimentConfig c;
  c.node_counts = {5};
  c.n_instances = 2;
  c.seed = 31337;
  const auto r = run_compare(c);
  const auto csv = to_csv(r.means);
  EXPECT_NE(csv.find("# wsnlife_version: "), std::string::npos);
  EXPECT_NE(csv.find("\"seed\":31337"), std::string::npos);
  // re-running from the echoed config reproduces the table
  const auto line = csv.substr(csv.find("# config: ") + 10);
  const auto echoed = config_from_json(nlohmann::json::parse(line.substr(0, line.find('\n'))));
  EXPECT_EQ(to_csv(run_compare(echoed).means), csv);
}

TEST(TopologyIo, RoundTripAndErrors) {
  const auto net = generate_topology(5, 50.0, 3);
  const PhyParams phy = reference_phy();
  const auto j = topology_to_json(net, &phy);
  const auto back = topology_from_json(j);
  ASSERT_EQ(back.network.size(), 5u);
  EXPECT_EQ(back.network[2].position.x, net[2].position.x);
  EXPECT_NEAR(back.phy.noise_w, 1e-10, 1e-22);
  EXPECT_THROW(topology_from_json(nlohmann::json::parse(R"({"foo": 1})")), InvalidInput);
  EXPECT_THROW(load_topology("/nonexistent/topo.json"), InvalidInput);
}

TEST(TopologyIo, FlowSolutionJson) {
  const auto t = load_topology(std::string(WSNLIFE_FIXTURES) + "/six_node_snapshot.json");
  const auto links = build_links(t.network, t.phy);
  const auto sol = solve_lifetime_lp(t.network, links, true);
  const auto j = flow_solution_to_json(t.network, links, sol);
  EXPECT_EQ(j.at("status"), "optimal");
  EXPECT_NEAR(j.at("T").get<double>(), 1.0 / 3.0, 1e-9);
  bool saw_coop = false;
  for (const auto& f : j.at("flows")) {
    if (!f.at("helpers").empty()) {
      saw_coop = true;
      EXPECT_EQ(f.at("from"), 6);
      EXPECT_EQ(f.at("to"), 1);
      EXPECT_EQ(f.at("helpers")[0], 5);
    }
  }
  EXPECT_TRUE(saw_coop);
  EXPECT_EQ(j.at("energy_used").size(), 6u);
}
