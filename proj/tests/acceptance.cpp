// Acceptance checks. One PASS/FAIL line per criterion; `--only K` runs a
// single criterion (used by ctest), no argument runs all of them.
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "wsnlife/experiments.hpp"

using namespace wsnlife;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- 1 -------------------------------------------------------------------
Outcome hypergeometric_vs_quadrature() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> zdist(0.0, 0.5);
  const double alphas[] = {2.0, 3.0, 4.0};
  const int lengths[] = {1, 10, 100};
  int checked = 0, skipped = 0;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const double alpha = alphas[t % 3];
    const int L = lengths[(t / 3) % 3];
    const double z = t < 9 ? 0.5 * (t % 2) : zdist(rng);  // include both ends of the z range
    const auto series = hyp2f1_terminating({2.0 / alpha, L, (alpha + 2.0) / alpha, z});
    if (series.cancellation_warning) {
      ++skipped;
      continue;
    }
    // 2F1(2/a, -L; 1 + 2/a; z) = 2 int_0^1 x (1 - z x^a)^L dx
    const double quad =
        2.0 * integrate_1d([&](double x) { return x * std::pow(1.0 - z * std::pow(x, alpha), L); },
                           0.0, 1.0, Tolerance{1e-13, 0.0, 2000});
    worst = std::max(worst, std::abs(series.value - quad) / std::abs(quad));
    ++checked;
  }
  return {worst <= 1e-8 && checked > 0,
          fmt("%d tuples compared, %d skipped (cancellation), max rel err %.2e (limit 1e-8)", checked,
              skipped, worst)};
}

// --- 2 -------------------------------------------------------------------
Outcome ct_closed_form_vs_monte_carlo() {
  const auto phy = reference_phy();
  int bad_sigma = 0, bad_rel = 0, used = 0;
  double worst_sigma = 0.0, worst_rel = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double r = 10.0 * i;
    if (detail::ct_argument(r, phy) > 0.25) continue;
    const ClusterGeometry g{10, r, 1000.0};
    const auto cf = ct_gain_closed_form(g, phy);
    const auto mc = ct_gain_monte_carlo(g, phy, 100000, stream_seed(7, i), 0);
    const double diff = std::abs(cf.value - mc.value);
    const double in_sigma = diff / mc.std_error;
    const double rel = diff / mc.value;
    worst_sigma = std::max(worst_sigma, in_sigma);
    worst_rel = std::max(worst_rel, rel);
    bad_sigma += in_sigma > 3.0;
    bad_rel += rel > 0.03;
    ++used;
  }
  return {used > 0 && bad_sigma == 0 && bad_rel == 0,
          fmt("%d radii; within 3 stderr: %d/%d (worst %.1f stderr); within 3%%: %d/%d (worst %.2f%%)",
              used, used - bad_sigma, used, worst_sigma, used - bad_rel, used, 100 * worst_rel)};
}

// --- 3 -------------------------------------------------------------------
Outcome cb_bound_check() {
  PhyParams phy = reference_phy();
  const ClusterGeometry g{100, 10.0 * phy.wavelength_m, 1000.0};
  const auto bound = cb_gain_bound(g, phy);
  const auto mc = cb_gain_monte_carlo(g, phy, 200, 11, 0);
  const double lhs = mc.value / g.nodes;
  const double rhs = 0.95 * bound.value / g.nodes;
  return {lhs >= rhs, fmt("mean directivity/N %.4f (stderr %.4f) vs 0.95 bound/N %.4f", lhs,
                          mc.std_error / g.nodes, rhs)};
}

// --- 4 -------------------------------------------------------------------
Outcome disk_table() {
  const double ratios[] = {2, 4, 6, 8, 10};
  const double ref_nj[] = {2.82, 10.25, 23.4, 42.5, 64.5};
  const double ref_save[] = {94.56, 93.33, 90.86, 88.13, 85.98};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 5; ++i) {
    DiskScenario sc;
    sc.outer_radius = ratios[i];
    sc.hop_range = 1.0;
    sc.grid = 100;
    sc.mode = ClusterMode::ideal;
    const auto prof = optimize_bypass(sc);
    const double nj = prof.max_njoint();
    const double save = saving_percent(prof);
    // exact sum at the innermost ring B = B0/G: hops h = B0/A0 - 1,
    // (h+1) + h (h+1) / 2 * A0 / B
    const double b = ratios[i] / 100.0;
    const double h = ratios[i] - 1.0;
    const double npf_exact = (h + 1.0) + h * (h + 1.0) / 2.0 / b;
    const bool nj_ok = std::abs(nj / ref_nj[i] - 1.0) <= 0.15;
    const bool save_ok = std::abs(save - ref_save[i]) <= 3.0;
    const bool npf_ok = std::abs(prof.n_pf[0] - npf_exact) <= 1e-9 * npf_exact &&
                        std::abs(prof.max_npf() - npf_exact) <= 1e-9 * npf_exact;
    ok = ok && nj_ok && save_ok && npf_ok;
    detail += fmt("%s B0/A0=%g: maxNj %.2f (ref %.2f%s) save %.2f%% (ref %.2f%s) Npf %.2f (%s)",
                  i ? ";" : "", ratios[i], nj, ref_nj[i], nj_ok ? "" : " X", save, ref_save[i],
                  save_ok ? "" : " X", prof.n_pf[0], npf_ok ? "exact" : "X");
  }
  return {ok, detail};
}

// --- 5 -------------------------------------------------------------------
Outcome snapshot_lp() {
  const auto topo = load_topology(std::string(WSNLIFE_FIXTURES) + "/six_node_snapshot.json");
  const auto links = build_links(topo.network, topo.phy);
  const auto plain = solve_lifetime_lp(topo.network, links, false);
  const auto coop = solve_lifetime_lp(topo.network, links, true);
  double excess = 0.0;
  for (const auto* s : {&plain, &coop}) {
    excess = std::max(excess, check_flow_solution(topo.network, links, *s).max_energy_excess);
  }
  const bool ok = plain.status == LPStatus::optimal && coop.status == LPStatus::optimal &&
                  std::abs(plain.lifetime - 0.2) <= 1e-6 && std::abs(coop.lifetime - 1.0 / 3.0) <= 1e-6 &&
                  excess <= 1e-6;
  return {ok, fmt("T no-coop %.6f (0.200000), T coop %.6f (0.333333), max energy excess %.1e",
                  plain.lifetime, coop.lifetime, std::max(0.0, excess))};
}

// --- 6 -------------------------------------------------------------------
// Ten generic LPs of at most 8 columns, and ten lifetime LPs of random
// networks with at most 8 nodes (kept to instances whose basis count is
// enumerable).
Outcome lp_oracle() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  double worst = 0.0;
  std::string notes;

  for (int t = 0; t < 10; ++t) {
    const std::size_t m = 2 + t % 3;      // 2..4 rows
    const std::size_t n = 6 + t % 3;      // 6..8 columns
    StandardLP lp;
    lp.A = DenseMatrix(m, n);
    std::vector<double> x0(n);
    for (auto& v : x0) v = u(rng);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) lp.A(i, j) = i == 0 ? 0.5 + u(rng) : 2.0 * u(rng) - 1.0;
    }
    lp.b.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) lp.b[i] += lp.A(i, j) * x0[j];
    }
    lp.c.resize(n);
    for (auto& v : lp.c) v = 2.0 * u(rng) - 1.0;
    const auto sol = solve_lp(lp);
    const auto ref = oracle::enumerate_bases(lp);
    if (sol.status != LPStatus::optimal || !ref.feasible) return {false, fmt("generic LP %d not solved", t)};
    worst = std::max(worst, std::abs(sol.objective - ref.objective) / std::max(1.0, std::abs(ref.objective)));
    ++compared;
  }

  int networks = 0;
  for (std::uint64_t s = 0; networks < 10 && s < 10000; ++s) {
    const int n_nodes = 3 + static_cast<int>(s % 6);  // 3..8
    const auto net = generate_topology(n_nodes, 100.0, stream_seed(606, s));
    const auto links = build_links(net, reference_phy());
    try {
      (void)min_hop_next(net, links);
    } catch (const NoRoute&) {
      continue;
    }
    const bool coop = s % 2 == 1;
    const auto model = build_lifetime_lp(net, links, coop);
    if (oracle::rank(model.lp.A) != model.lp.A.rows) continue;
    if (oracle::binomial(model.lp.A.cols, model.lp.A.rows) > 3e6) continue;
    const auto sol = solve_lp(model.lp);
    const auto ref = oracle::enumerate_bases(model.lp);
    if (sol.status != LPStatus::optimal || !ref.feasible) return {false, "lifetime LP not solved"};
    worst = std::max(worst, std::abs(sol.objective - ref.objective) / std::max(1.0, std::abs(ref.objective)));
    notes += fmt("%s%dn/%zux%zu", networks ? "," : "", n_nodes, model.lp.A.rows, model.lp.A.cols);
    ++networks;
    ++compared;
  }
  return {compared == 20 && worst <= 1e-7,
          fmt("%d instances (10 generic, %d lifetime LPs: %s), max objective gap %.2e (limit 1e-7)",
              compared, networks, notes.c_str(), worst)};
}

// --- 7 -------------------------------------------------------------------
Outcome dominance() {
  const auto phy = reference_phy();
  int evaluated = 0, disconnected = 0, violations = 0;
  double worst = 0.0;
  for (std::uint64_t s = 0; evaluated < 200; ++s) {
    const int n = 5 + static_cast<int>(mix_seed(s) % 21);  // 5..25
    const auto net = generate_topology(n, 100.0, stream_seed(777, s));
    const auto links = build_links(net, phy);
    double sp = 0.0;
    try {
      sp = shortest_path_lifetime(net, links);
    } catch (const NoRoute&) {
      ++disconnected;
      continue;
    }
    const auto plain = solve_lifetime_lp(net, links, false);
    const auto coop = solve_lifetime_lp(net, links, true);
    const double gap1 = plain.lifetime - coop.lifetime;
    const double gap2 = sp - plain.lifetime;
    worst = std::max({worst, gap1, gap2});
    if (plain.status != LPStatus::optimal || coop.status != LPStatus::optimal || gap1 > 1e-9 || gap2 > 1e-9) {
      ++violations;
    }
    ++evaluated;
  }
  return {violations == 0, fmt("%d instances (%d disconnected draws skipped), %d violations, worst gap %.1e",
                               evaluated, disconnected, violations, worst)};
}

// --- 8 -------------------------------------------------------------------
Outcome improvement_band() {
  ExperimentConfig c;
  c.kind = ExperimentKind::compare;
  c.node_counts = {10, 15, 20, 25, 30};
  c.n_instances = 100;
  c.seed = 2024;
  c.workers = 0;
  const auto report = run_compare(c);
  const auto& t = report.means;
  const auto imp = t.column("mean_improvement");
  const auto sp = t.column("mean_shortest_path");
  bool ok = true;
  std::string detail;
  double prev_sp = std::numeric_limits<double>::infinity();
  for (const auto& row : t.rows) {
    const bool band = row[imp] >= 0.03 && row[imp] <= 0.25;
    const bool mono = row[sp] <= prev_sp;
    ok = ok && band && mono;
    prev_sp = row[sp];
    detail += fmt("%s n=%g: +%.1f%%%s sp %.3f%s", detail.empty() ? "" : ";", row[0], 100 * row[imp],
                  band ? "" : " X", row[sp], mono ? "" : " X");
  }
  detail += fmt("; %zu disconnected instances skipped", report.skipped.size());
  return {ok, detail};
}

// --- 9 -------------------------------------------------------------------
Outcome determinism() {
  std::vector<std::string> mismatches;
  auto check = [&](const char* name, auto&& run) {
    const auto a = run(1u);
    const auto b = run(1u);
    const auto c = run(8u);
    if (a != b || a != c) mismatches.push_back(name);
  };
  ExperimentConfig g;
  g.kind = ExperimentKind::gain_ct;
  g.trials = 5000;
  check("gain-ct", [&](unsigned w) { auto c = g; c.workers = w; return to_csv(run_gain(c), false); });
  g.kind = ExperimentKind::gain_cb;
  g.trials = 20;
  g.radii = {1, 2, 4};
  check("gain-cb", [&](unsigned w) { auto c = g; c.workers = w; return to_csv(run_gain(c), false); });
  ExperimentConfig d;
  d.kind = ExperimentKind::disk;
  check("disk", [&](unsigned w) {
    auto c = d;
    c.workers = w;
    const auto r = run_disk(c);
    return to_csv(r.summary, false) + to_csv(r.rings, false);
  });
  ExperimentConfig cm;
  cm.node_counts = {8, 16};
  cm.n_instances = 12;
  cm.include_dynamic = true;
  check("compare", [&](unsigned w) {
    auto c = cm;
    c.workers = w;
    const auto r = run_compare(c);
    return to_csv(r.means, false) + to_csv(r.instances, false);
  });
  std::string detail = "gain-ct, gain-cb, disk, compare re-run at 1,1,8 workers: ";
  if (mismatches.empty()) {
    detail += "byte-identical";
  } else {
    for (const auto& m : mismatches) detail += m + " differs ";
  }
  return {mismatches.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);
  }
  const std::vector<Criterion> all{
      {1, "hypergeometric series vs quadrature", 1.0, hypergeometric_vs_quadrature},
      {2, "CT closed form vs Monte Carlo", 30.0, ct_closed_form_vs_monte_carlo},
      {3, "CB directivity bound", 30.0, cb_bound_check},
      {4, "disk bypass table", 10.0, disk_table},
      {5, "snapshot LP lifetimes", 1.0, snapshot_lp},
      {6, "LP vs basis enumeration", 30.0, lp_oracle},
      {7, "dominance properties", 300.0, dominance},
      {8, "random-network improvement band", 600.0, improvement_band},
      {9, "determinism across workers", 600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %d %s: %s -- %s [%.2fs / %.0fs%s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : " over budget");
  }
  return failures == 0 ? 0 : 1;
}
