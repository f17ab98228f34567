#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsnlife/errors.hpp"
#include "wsnlife/gain_models.hpp"
#include "wsnlife/numerics.hpp"

namespace wsnlife {

/// Nodes uniformly fill a disk of radius B0 around one sink. Rings sit at
/// B_k = B0 k / G, k = 1..G.
struct DiskScenario {
  double outer_radius = 2.0;  // B0
  double hop_range = 1.0;     // A0
  int grid = 100;             // G
  ClusterMode mode = ClusterMode::ideal;
  PhyParams phy{};
  /// Use the real-valued required gain as the cluster size instead of the
  /// integer inversion (ideal mode only); a continuous relaxation.
  bool fractional_clusters = false;
  std::int64_t cluster_cap = kDefaultClusterCap;

  void validate() const {
    if (!(outer_radius > 0) || !(hop_range > 0) || grid < 2) {
      throw InvalidInput("DiskScenario: require B0 > 0, A0 > 0, G >= 2");
    }
    if (fractional_clusters && mode != ClusterMode::ideal) {
      throw InvalidInput("DiskScenario: fractional clusters only apply to ideal mode");
    }
  }

  double ring_radius(int k) const { return outer_radius * (k + 1) / grid; }

  /// Largest hop count n with B + n A0 <= B0.
  int max_hops(double b) const {
    return static_cast<int>(std::floor((outer_radius - b) / hop_range + 1e-9));
  }

  /// Index of the ring nearest to radius b, or -1 when b lies past B0.
  int nearest_ring(double b) const {
    const long k = std::lround(b * grid / outer_radius) - 1;
    if (k >= grid) return -1;
    return static_cast<int>(std::max(0L, k));
  }
};

struct BypassProfile {
  std::vector<double> ring_radius;
  std::vector<double> p_r;
  std::vector<double> n_joint;
  std::vector<double> n_pf;
  /// Integer-valued unless the scenario requests fractional clusters.
  std::vector<double> n_cluster;
  double kappa = 1.0;

  double max_njoint() const { return *std::max_element(n_joint.begin(), n_joint.end()); }
  double max_npf() const { return *std::max_element(n_pf.begin(), n_pf.end()); }
};

/// Packets a node at distance B transmits under pure hop-by-hop forwarding:
/// sum_{n=0}^{floor((B0-B)/A0)} (1 + n A0 / B).
inline double npf(double b, const DiskScenario& sc) {
  if (!(b > 0)) throw InvalidInput("npf: require B > 0");
  KahanSum sum;
  const int hops = sc.max_hops(b);
  for (int n = 0; n <= hops; ++n) sum += 1.0 + n * sc.hop_range / b;
  return sum.value();
}

/// Cluster size needed to reach the sink from distance B in one CB/CT shot;
/// the required gain is max(B / A0, 1)^alpha.
inline double cluster_size_for_ring(double b, const DiskScenario& sc) {
  if (!(b > 0)) throw InvalidInput("cluster_size_for_ring: require B > 0");
  const double c0 = std::pow(std::max(b / sc.hop_range, 1.0), sc.phy.alpha);
  if (sc.fractional_clusters) return c0;
  return static_cast<double>(invert_cluster_size(c0, sc.mode, sc.phy, sc.cluster_cap));
}

namespace detail {

struct RingTables {
  std::vector<double> radius;
  std::vector<double> n_pf;
  std::vector<double> n_cluster;
};

inline RingTables ring_tables(const DiskScenario& sc) {
  sc.validate();
  RingTables t;
  t.radius.resize(sc.grid);
  t.n_pf.resize(sc.grid);
  t.n_cluster.resize(sc.grid);
  for (int k = 0; k < sc.grid; ++k) {
    t.radius[k] = sc.ring_radius(k);
    t.n_pf[k] = npf(t.radius[k], sc);
    t.n_cluster[k] = cluster_size_for_ring(t.radius[k], sc);
  }
  return t;
}

/// Forwarded-packet load of ring k given bypass probabilities of the rings
/// outside it: sum_n (1 + n A0 / B) prod_{j=1}^{n} (1 - P_r(B + j A0)).
inline double ring_load(int k, const std::vector<double>& p_r, const DiskScenario& sc,
                        const RingTables& t) {
  const double b = t.radius[k];
  const int hops = sc.max_hops(b);
  KahanSum load;
  double keep = 1.0;
  for (int n = 0; n <= hops; ++n) {
    if (n > 0) {
      const int j = sc.nearest_ring(b + n * sc.hop_range);
      if (j >= 0) keep *= 1.0 - p_r[j];
    }
    load += (1.0 + n * sc.hop_range / b) * keep;
  }
  return load.value();
}

inline BypassProfile evaluate_profile(const std::vector<double>& p_r, const DiskScenario& sc,
                                      const RingTables& t) {
  BypassProfile out;
  out.ring_radius = t.radius;
  out.n_pf = t.n_pf;
  out.n_cluster = t.n_cluster;
  out.p_r = p_r;
  out.n_joint.resize(sc.grid);
  for (int k = 0; k < sc.grid; ++k) {
    const double load = ring_load(k, p_r, sc, t);
    out.n_joint[k] = (1.0 - p_r[k] + t.n_cluster[k] * p_r[k]) * load;
  }
  out.kappa = out.max_njoint();
  return out;
}

/// Greedy sweep from the boundary inward: each ring takes the largest bypass
/// probability that keeps its own N_joint within kappa. Returns false when
/// some ring's forwarding load alone already exceeds kappa.
inline bool feasibility_sweep(double kappa, double rel_tol, const DiskScenario& sc,
                              const RingTables& t, std::vector<double>& p_r) {
  p_r.assign(sc.grid, 0.0);
  bool feasible = true;
  for (int k = sc.grid - 1; k >= 0; --k) {
    const double load = ring_load(k, p_r, sc, t);
    if (load > kappa * (1.0 + rel_tol)) feasible = false;
    const double nc = t.n_cluster[k];
    if (nc > 1.0) {
      p_r[k] = std::clamp((kappa / load - 1.0) / (nc - 1.0), 0.0, 1.0);
    }
  }
  return feasible;
}

}  // namespace detail

/// N_joint per ring for the given bypass probabilities.
inline std::vector<double> njoint_profile(const std::vector<double>& p_r, const DiskScenario& sc) {
  if (p_r.size() != static_cast<std::size_t>(sc.grid)) {
    throw DimensionMismatch("njoint_profile: P_r length must equal the ring count");
  }
  for (double p : p_r) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("njoint_profile: P_r outside [0,1]");
  }
  const auto t = detail::ring_tables(sc);
  return detail::evaluate_profile(p_r, sc, t).n_joint;
}

/// Profile for a fixed bypass probability on every ring (0: pure forwarding,
/// 1: pure CB/CT).
inline BypassProfile uniform_profile(double p, const DiskScenario& sc) {
  const auto t = detail::ring_tables(sc);
  return detail::evaluate_profile(std::vector<double>(sc.grid, p), sc, t);
}

/// min over P_r of max_B N_joint(B), by bisection on the temperature kappa.
inline BypassProfile optimize_bypass(const DiskScenario& sc, const Tolerance& tol = {1e-9, 0.0, 200}) {
  tol.validate();
  const auto t = detail::ring_tables(sc);
  const double kappa_hi0 = *std::max_element(t.n_pf.begin(), t.n_pf.end());
  std::vector<double> p_r;

  double lo = 1.0;
  double hi = kappa_hi0;
  if (!detail::feasibility_sweep(hi, tol.rel, sc, t, p_r)) {
    throw NonConvergence("optimize_bypass: pure forwarding reported infeasible");
  }
  if (detail::feasibility_sweep(lo, tol.rel, sc, t, p_r)) {
    hi = lo;
  } else {
    int iters = 0;
    while (hi - lo > 1e-6 * kappa_hi0) {
      if (++iters > tol.max_iters) throw NonConvergence("optimize_bypass: bisection stalled");
      const double mid = 0.5 * (lo + hi);
      if (detail::feasibility_sweep(mid, tol.rel, sc, t, p_r)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  detail::feasibility_sweep(hi, tol.rel, sc, t, p_r);
  auto profile = detail::evaluate_profile(p_r, sc, t);
  profile.kappa = hi;
  return profile;
}

/// 100 (1 - max N_joint / max N_pf).
inline double saving_percent(const BypassProfile& profile) {
  return 100.0 * (1.0 - profile.max_njoint() / profile.max_npf());
}

}  // namespace wsnlife
