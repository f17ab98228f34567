#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wsnlife/errors.hpp"
#include "wsnlife/gain_models.hpp"
#include "wsnlife/lp_solver.hpp"
#include "wsnlife/numerics.hpp"

namespace wsnlife {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct SensorNode {
  int id = 0;
  Point position;
  double energy_init = 1.0;       // E_i
  double energy_remaining = 1.0;  // remaining energy
  double rate = 0.0;              // Q_i; positive at origins, negative at sinks
};

/// Immutable node set, ordered by id so that index order is id order.
class Network {
public:
  Network() = default;
  explicit Network(std::vector<SensorNode> nodes) : nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end(),
              [](const SensorNode& a, const SensorNode& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (i > 0 && nodes_[i - 1].id == n.id) {
        throw InvalidInput("Network: duplicate node id " + std::to_string(n.id));
      }
      if (!(n.energy_init > 0) || !(n.energy_remaining >= 0) ||
          n.energy_remaining > n.energy_init * (1.0 + 1e-12)) {
        throw InvalidInput("Network: node " + std::to_string(n.id) +
                           " requires E_init > 0 and 0 <= E_remaining <= E_init");
      }
      if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y) || !std::isfinite(n.rate)) {
        throw InvalidInput("Network: node " + std::to_string(n.id) + " has non-finite fields");
      }
    }
  }

  const std::vector<SensorNode>& nodes() const { return nodes_; }
  const SensorNode& operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  bool is_sink(std::size_t i) const { return nodes_[i].rate < 0; }
  bool is_origin(std::size_t i) const { return nodes_[i].rate > 0; }
  double distance(std::size_t i, std::size_t j) const {
    return wsnlife::distance(nodes_[i].position, nodes_[j].position);
  }

  std::size_t index_of(int id) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                                     [](const SensorNode& n, int v) { return n.id < v; });
    if (it == nodes_.end() || it->id != id) {
      throw InvalidInput("Network: unknown node id " + std::to_string(id));
    }
    return static_cast<std::size_t>(it - nodes_.begin());
  }

private:
  std::vector<SensorNode> nodes_;
};

struct DirectLink {
  std::size_t from;
  std::size_t to;
};

/// Cooperative link: `from` reaches `to` only together with `helpers`.
struct CoopLink {
  std::size_t from;
  std::size_t to;
  std::vector<std::size_t> helpers;
};

struct LinkSet {
  std::vector<DirectLink> direct;
  std::vector<CoopLink> cooperative;
  /// reach[i] = S_i, sorted by index.
  std::vector<std::vector<std::size_t>> reach;

  bool has_direct(std::size_t i, std::size_t j) const {
    return std::binary_search(reach[i].begin(), reach[i].end(), j);
  }

  const CoopLink* find_cooperative(std::size_t i, std::size_t m) const {
    for (const auto& l : cooperative) {
      if (l.from == i && l.to == m) return &l;
    }
    return nullptr;
  }
};

/// Direct links wherever the single-node SNR meets gamma0. A non-sink node i
/// gets a cooperative link to m with its nearest non-sink neighbor h when h
/// can decode i, neither i nor h reaches m alone, and the two received
/// energies together meet gamma0.
inline LinkSet build_links(const Network& net, const PhyParams& phy) {
  phy.validate();
  const std::size_t n = net.size();
  if (n < 2) throw InvalidInput("build_links: need at least two nodes");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (net.distance(i, j) == 0.0) {
        throw InvalidInput("build_links: nodes " + std::to_string(net[i].id) + " and " +
                           std::to_string(net[j].id) + " share a position");
      }
    }
  }
  LinkSet links;
  links.reach.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (phy.snr(net.distance(i, j)) >= phy.snr_threshold) {
        links.direct.push_back({i, j});
        links.reach[i].push_back(j);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_sink(i)) continue;
    std::size_t helper = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < n; ++h) {
      if (h == i || net.is_sink(h)) continue;
      const double d = net.distance(i, h);
      if (d < best) {
        best = d;
        helper = h;
      }
    }
    if (helper == n || !links.has_direct(i, helper)) continue;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == i || m == helper) continue;
      if (links.has_direct(i, m) || links.has_direct(helper, m)) continue;
      const double combined = phy.snr(net.distance(i, m)) + phy.snr(net.distance(helper, m));
      if (combined >= phy.snr_threshold) links.cooperative.push_back({i, m, {helper}});
    }
  }
  return links;
}

struct FlowSolution {
  LPStatus status = LPStatus::infeasible;
  bool with_coop = false;
  double lifetime = 0.0;            // T
  std::vector<double> direct_flow;  // q-hat per links.direct entry
  std::vector<double> coop_flow;    // q-hat per links.cooperative entry
  std::vector<double> energy_used;  // per node
};

/// Per-node energy: direct sends, cooperative sends, and helper duty.
inline std::vector<double> energy_consumption(std::size_t n_nodes, const LinkSet& links,
                                              const std::vector<double>& direct_flow,
                                              const std::vector<double>& coop_flow) {
  std::vector<KahanSum> used(n_nodes);
  for (std::size_t k = 0; k < links.direct.size(); ++k) used[links.direct[k].from] += direct_flow[k];
  for (std::size_t k = 0; k < links.cooperative.size(); ++k) {
    const auto& l = links.cooperative[k];
    used[l.from] += coop_flow[k];
    for (auto h : l.helpers) used[h] += coop_flow[k];
  }
  std::vector<double> out(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) out[i] = used[i].value();
  return out;
}

struct FlowCheck {
  double max_conservation_error = 0.0;
  double max_energy_excess = 0.0;  // max(0, used - E) over nodes
  double min_flow = 0.0;
};

/// Recomputes conservation and energy residuals of a solution from scratch.
inline FlowCheck check_flow_solution(const Network& net, const LinkSet& links,
                                     const FlowSolution& sol) {
  FlowCheck out;
  const std::size_t n = net.size();
  std::vector<KahanSum> balance(n);
  for (std::size_t k = 0; k < links.direct.size(); ++k) {
    balance[links.direct[k].from] += sol.direct_flow[k];
    balance[links.direct[k].to] += -sol.direct_flow[k];
    out.min_flow = std::min(out.min_flow, sol.direct_flow[k]);
  }
  for (std::size_t k = 0; k < links.cooperative.size(); ++k) {
    balance[links.cooperative[k].from] += sol.coop_flow[k];
    balance[links.cooperative[k].to] += -sol.coop_flow[k];
    out.min_flow = std::min(out.min_flow, sol.coop_flow[k]);
  }
  const auto used = energy_consumption(n, links, sol.direct_flow, sol.coop_flow);
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_sink(i)) continue;
    // out - in = T Q_i
    const double err = std::abs(balance[i].value() - sol.lifetime * net[i].rate);
    out.max_conservation_error = std::max(out.max_conservation_error, err);
    out.max_energy_excess = std::max(out.max_energy_excess, used[i] - net[i].energy_remaining);
  }
  return out;
}

namespace detail {

/// Nodes that can reach some sink through transmissions by non-sink nodes.
inline std::vector<bool> can_reach_sink(const Network& net, const LinkSet& links, bool with_coop) {
  const std::size_t n = net.size();
  std::vector<std::vector<std::size_t>> incoming(n);
  for (const auto& l : links.direct) {
    if (!net.is_sink(l.from)) incoming[l.to].push_back(l.from);
  }
  if (with_coop) {
    for (const auto& l : links.cooperative) {
      if (!net.is_sink(l.from)) incoming[l.to].push_back(l.from);
    }
  }
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_sink(i)) {
      seen[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : incoming[v]) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Column layout of the lifetime LP built by build_lifetime_lp.
struct LifetimeModel {
  StandardLP lp;
  std::vector<std::size_t> direct_cols;  // links.direct index per flow column
  std::vector<std::size_t> coop_cols;    // links.cooperative index, after the direct columns
  std::size_t t_col = 0;
};

/// Max-min lifetime program in lifetime-scaled flows:
///   max T  s.t.  q >= 0,
///                sum_out q_i + helper duty_i <= E_i          (non-sinks),
///                sum_in q_i + T Q_i = sum_out q_i            (non-sinks).
/// Energy rows carry one slack column each. Without cooperation the program
/// is the classic max-min lifetime routing.
inline LifetimeModel build_lifetime_lp(const Network& net, const LinkSet& links, bool with_coop) {
  const std::size_t n = net.size();
  LifetimeModel model;
  auto& direct_cols = model.direct_cols;
  auto& coop_cols = model.coop_cols;
  for (std::size_t k = 0; k < links.direct.size(); ++k) {
    if (!net.is_sink(links.direct[k].from)) direct_cols.push_back(k);
  }
  if (with_coop) {
    for (std::size_t k = 0; k < links.cooperative.size(); ++k) {
      if (!net.is_sink(links.cooperative[k].from)) coop_cols.push_back(k);
    }
  }
  std::vector<std::size_t> row_of(n, n);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (!net.is_sink(i)) {
      row_of[i] = members.size();
      members.push_back(i);
    }
  }
  const std::size_t n_flow = direct_cols.size() + coop_cols.size();
  const std::size_t t_col = n_flow;
  const std::size_t n_cols = n_flow + 1 + members.size();
  const std::size_t n_m = members.size();
  model.t_col = t_col;

  DenseMatrix a(2 * n_m, n_cols);
  std::vector<double> b(2 * n_m, 0.0);
  auto add_flow = [&](std::size_t col, std::size_t from, std::size_t to,
                      const std::vector<std::size_t>& helpers) {
    a(row_of[from], col) += 1.0;
    if (row_of[to] < n) a(row_of[to], col) -= 1.0;
    a(n_m + row_of[from], col) += 1.0;
    for (auto h : helpers) {
      if (row_of[h] >= n) throw InvalidInput("solve_lifetime_lp: a sink cannot act as helper");
      a(n_m + row_of[h], col) += 1.0;
    }
  };
  for (std::size_t c = 0; c < direct_cols.size(); ++c) {
    const auto& l = links.direct[direct_cols[c]];
    add_flow(c, l.from, l.to, {});
  }
  for (std::size_t c = 0; c < coop_cols.size(); ++c) {
    const auto& l = links.cooperative[coop_cols[c]];
    add_flow(direct_cols.size() + c, l.from, l.to, l.helpers);
  }
  for (std::size_t r = 0; r < n_m; ++r) {
    const auto i = members[r];
    a(r, t_col) = -net[i].rate;
    a(n_m + r, t_col + 1 + r) = 1.0;
    b[n_m + r] = net[i].energy_remaining;
  }

  // drop conservation rows of isolated zero-rate relays
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < 2 * n_m; ++r) {
    bool nonzero = false;
    for (std::size_t j = 0; j < n_cols && !nonzero; ++j) nonzero = a(r, j) != 0.0;
    if (nonzero) keep.push_back(r);
  }
  auto& lp = model.lp;
  lp.A = DenseMatrix(keep.size(), n_cols);
  lp.b.resize(keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t j = 0; j < n_cols; ++j) lp.A(r, j) = a(keep[r], j);
    lp.b[r] = b[keep[r]];
  }
  lp.c.assign(n_cols, 0.0);
  lp.c[t_col] = 1.0;
  return model;
}

inline FlowSolution solve_lifetime_lp(const Network& net, const LinkSet& links, bool with_coop,
                                      const SimplexOptions& opt = {}) {
  const std::size_t n = net.size();
  FlowSolution sol;
  sol.with_coop = with_coop;
  sol.direct_flow.assign(links.direct.size(), 0.0);
  sol.coop_flow.assign(links.cooperative.size(), 0.0);

  bool any_origin = false;
  for (std::size_t i = 0; i < n; ++i) any_origin = any_origin || net.is_origin(i);
  if (!any_origin) throw InvalidInput("solve_lifetime_lp: no origin with positive rate");

  const auto reachable = detail::can_reach_sink(net, links, with_coop);
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_origin(i) && !reachable[i]) {
      sol.status = LPStatus::infeasible;
      sol.energy_used.assign(n, 0.0);
      return sol;
    }
  }

  const auto model = build_lifetime_lp(net, links, with_coop);
  const auto res = solve_lp(model.lp, Tolerance{1e-9, 1e-9, 100000}, opt);
  if (res.status == LPStatus::unbounded) {
    throw Unbounded("solve_lifetime_lp: lifetime unbounded (check rates and energies)");
  }
  sol.status = res.status;
  if (res.status != LPStatus::optimal) {
    sol.energy_used.assign(n, 0.0);
    return sol;
  }
  const auto& dc = model.direct_cols;
  const auto& cc = model.coop_cols;
  for (std::size_t c = 0; c < dc.size(); ++c) sol.direct_flow[dc[c]] = res.x[c];
  for (std::size_t c = 0; c < cc.size(); ++c) sol.coop_flow[cc[c]] = res.x[dc.size() + c];
  sol.lifetime = res.x[model.t_col];
  sol.energy_used = energy_consumption(n, links, sol.direct_flow, sol.coop_flow);
  return sol;
}

// ---------------------------------------------------------------------------
// Dynamic-cost heuristic.
// ---------------------------------------------------------------------------

struct CostParams {
  double beta1 = 2.0;
  double beta2 = 2.0;

  void validate() const {
    if (!(beta1 > 0) || !(beta2 > 0)) throw InvalidInput("CostParams: betas must be positive");
  }
};

struct EnergyState {
  std::vector<double> initial;
  std::vector<double> remaining;

  static EnergyState from(const Network& net) {
    EnergyState s;
    for (const auto& n : net.nodes()) {
      s.initial.push_back(n.energy_init);
      s.remaining.push_back(n.energy_remaining);
    }
    return s;
  }
};

namespace detail {

inline double barrier_term(std::size_t i, const EnergyState& e, double beta, double packet_energy) {
  if (e.remaining[i] < packet_energy * (1.0 - 1e-12)) return std::numeric_limits<double>::infinity();
  return std::pow(e.initial[i] / e.remaining[i], beta);
}

inline double link_cost(std::size_t from, const std::vector<std::size_t>& helpers,
                        const EnergyState& e, const CostParams& p, double packet_energy) {
  double cost = barrier_term(from, e, p.beta1, packet_energy);
  for (auto h : helpers) cost += barrier_term(h, e, p.beta2, packet_energy);
  return cost;
}

}  // namespace detail

/// (E_i / E_i,remaining)^beta1 + sum over helpers (E_l / E_l,remaining)^beta2;
/// infinite once any involved node cannot afford one more packet.
inline double dynamic_cost(std::size_t i, std::size_t j, const LinkSet& links,
                           const EnergyState& energy, const CostParams& params,
                           double packet_energy = 1.0) {
  params.validate();
  if (links.has_direct(i, j)) return detail::link_cost(i, {}, energy, params, packet_energy);
  if (const auto* l = links.find_cooperative(i, j)) {
    return detail::link_cost(i, l->helpers, energy, params, packet_energy);
  }
  throw InvalidInput("dynamic_cost: no link from node index " + std::to_string(i) + " to " +
                     std::to_string(j));
}

struct TrafficSpec {
  enum class Kind { fixed, poisson };
  Kind kind = Kind::fixed;
  /// Packets per unit rate per round; each packet costs 1/granularity energy.
  int granularity = 1;
  std::int64_t max_rounds = 1'000'000;
};

struct SimulationResult {
  double lifetime = 0.0;  // rounds, including the fraction of the failing round
  std::int64_t rounds_completed = 0;
  std::int64_t packets_delivered = 0;
  bool network_died = false;  // false only if max_rounds was reached
};

/// Round-based packet simulation: each origin emits its packets in id order,
/// each packet follows the currently cheapest path to a sink, and the run
/// ends at the first packet that cannot be delivered.
inline SimulationResult simulate_dynamic(const Network& net, const LinkSet& links,
                                         const CostParams& params, const TrafficSpec& traffic,
                                         std::uint64_t seed) {
  params.validate();
  if (traffic.granularity < 1) throw InvalidInput("simulate_dynamic: granularity must be >= 1");
  const std::size_t n = net.size();
  const double packet_energy = 1.0 / traffic.granularity;

  struct Edge {
    std::size_t to;
    std::ptrdiff_t coop;  // -1 for a direct link
  };
  std::vector<std::vector<Edge>> out(n);
  for (const auto& l : links.direct) {
    if (!net.is_sink(l.from)) out[l.from].push_back({l.to, -1});
  }
  for (std::size_t k = 0; k < links.cooperative.size(); ++k) {
    const auto& l = links.cooperative[k];
    if (!net.is_sink(l.from)) out[l.from].push_back({l.to, static_cast<std::ptrdiff_t>(k)});
  }
  static const std::vector<std::size_t> kNoHelpers;
  auto helpers_of = [&](const Edge& e) -> const std::vector<std::size_t>& {
    return e.coop < 0 ? kNoHelpers : links.cooperative[static_cast<std::size_t>(e.coop)].helpers;
  };

  auto energy = EnergyState::from(net);
  std::mt19937_64 rng(seed);
  SimulationResult result;

  std::vector<double> dist(n);
  std::vector<std::size_t> prev_node(n);
  std::vector<std::ptrdiff_t> prev_edge(n);

  auto route_packet = [&](std::size_t origin) -> bool {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(prev_node.begin(), prev_node.end(), n);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[origin] = 0.0;
    pq.push({0.0, origin});
    std::size_t target = n;
    while (!pq.empty()) {
      const auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      if (net.is_sink(v)) {
        target = v;
        break;
      }
      for (std::size_t k = 0; k < out[v].size(); ++k) {
        const auto& e = out[v][k];
        const double c = detail::link_cost(v, helpers_of(e), energy, params, packet_energy);
        if (!std::isfinite(c)) continue;
        if (d + c < dist[e.to]) {
          dist[e.to] = d + c;
          prev_node[e.to] = v;
          prev_edge[e.to] = static_cast<std::ptrdiff_t>(k);
          pq.push({dist[e.to], e.to});
        }
      }
    }
    if (target == n) return false;
    // total spend per node along the path, checked before committing
    std::vector<std::pair<std::size_t, double>> spend;
    for (std::size_t v = target; v != origin; v = prev_node[v]) {
      const auto u = prev_node[v];
      const auto& e = out[u][static_cast<std::size_t>(prev_edge[v])];
      spend.push_back({u, packet_energy});
      for (auto h : helpers_of(e)) spend.push_back({h, packet_energy});
    }
    std::vector<double> need(n, 0.0);
    for (const auto& [node, amount] : spend) need[node] += amount;
    for (std::size_t i = 0; i < n; ++i) {
      if (need[i] > energy.remaining[i] * (1.0 + 1e-12)) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      energy.remaining[i] = std::max(0.0, energy.remaining[i] - need[i]);
    }
    return true;
  };

  std::vector<std::size_t> origins;
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_origin(i)) origins.push_back(i);
  }
  if (origins.empty()) throw InvalidInput("simulate_dynamic: no origin with positive rate");

  for (std::int64_t round = 0; round < traffic.max_rounds; ++round) {
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;
    for (auto i : origins) {
      const double mean = net[i].rate * traffic.granularity;
      std::int64_t c = 0;
      if (traffic.kind == TrafficSpec::Kind::fixed) {
        c = std::llround(mean);
      } else {
        std::poisson_distribution<std::int64_t> pois(mean);
        c = pois(rng);
      }
      counts.push_back(c);
      total += c;
    }
    std::int64_t delivered = 0;
    for (std::size_t o = 0; o < origins.size(); ++o) {
      for (std::int64_t p = 0; p < counts[o]; ++p) {
        if (!route_packet(origins[o])) {
          result.network_died = true;
          result.lifetime = static_cast<double>(round) +
                            (total > 0 ? static_cast<double>(delivered) / total : 0.0);
          result.packets_delivered += delivered;
          return result;
        }
        ++delivered;
      }
    }
    result.packets_delivered += delivered;
    result.rounds_completed = round + 1;
  }
  result.lifetime = static_cast<double>(result.rounds_completed);
  return result;
}

// ---------------------------------------------------------------------------
// Static min-hop baseline.
// ---------------------------------------------------------------------------

/// Next hop toward the nearest sink by hop count, ties to the lowest id.
/// Entries are n for sinks. Throws NoRoute when an origin is disconnected.
inline std::vector<std::size_t> min_hop_next(const Network& net, const LinkSet& links) {
  const std::size_t n = net.size();
  constexpr int unseen = std::numeric_limits<int>::max();
  std::vector<int> hops(n, unseen);
  std::vector<std::vector<std::size_t>> incoming(n);
  for (const auto& l : links.direct) {
    if (!net.is_sink(l.from)) incoming[l.to].push_back(l.from);
  }
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_sink(i)) {
      hops[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : incoming[v]) {
      if (hops[u] == unseen) {
        hops[u] = hops[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<std::size_t> next(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_sink(i)) continue;
    if (hops[i] == unseen) {
      if (net.is_origin(i)) {
        throw NoRoute("shortest path: node " + std::to_string(net[i].id) + " cannot reach a sink");
      }
      continue;
    }
    for (auto j : links.reach[i]) {
      if (hops[j] == hops[i] - 1) {
        next[i] = j;
        break;
      }
    }
  }
  return next;
}

/// First-node-failure lifetime of fixed min-hop routing: min_i E_i / load_i.
inline double shortest_path_lifetime(const Network& net, const LinkSet& links) {
  const auto next = min_hop_next(net, links);
  const std::size_t n = net.size();
  std::vector<KahanSum> load(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!net.is_origin(i)) continue;
    any = true;
    for (std::size_t v = i; !net.is_sink(v); v = next[v]) load[v] += net[i].rate;
  }
  if (!any) throw InvalidInput("shortest_path_lifetime: no origin with positive rate");
  double life = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double l = load[i].value();
    if (l > 0) life = std::min(life, net[i].energy_remaining / l);
  }
  return life;
}

}  // namespace wsnlife
