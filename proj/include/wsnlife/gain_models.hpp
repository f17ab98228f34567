#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wsnlife/errors.hpp"
#include "wsnlife/numerics.hpp"
#include "wsnlife/parallel.hpp"

namespace wsnlife {

/// Radio and deployment parameters. All quantities are linear scale.
struct PhyParams {
  double power_w = 0.01;         // transmit power P
  double noise_w = 1e-10;        // thermal noise sigma^2
  double antenna_const = 1.0;    // C0
  double alpha = 4.0;            // path-loss exponent
  double wavelength_m = 0.125;   // carrier wavelength lambda
  double density = 0.05;         // nodes per square meter (rho)
  int packet_length = 100;       // L, symbols per packet
  double snr_threshold = 10.0;   // gamma0, linear

  void validate() const {
    if (!(power_w > 0) || !(noise_w > 0) || !(antenna_const > 0) || !(alpha >= 2) ||
        !(wavelength_m > 0) || !(density > 0) || packet_length < 1 || !(snr_threshold > 0)) {
      throw InvalidInput("PhyParams: invariant violated");
    }
  }

  /// Average SNR P C0 d^-alpha / sigma^2 of a direct link at distance d.
  double snr(double distance) const {
    return power_w * antenna_const * std::pow(distance, -alpha) / noise_w;
  }

  /// A0: the distance at which snr(A0) == snr_threshold.
  double hop_range() const {
    return std::pow(power_w * antenna_const / (noise_w * snr_threshold), 1.0 / alpha);
  }
};

struct ClusterGeometry {
  int nodes = 1;           // N
  double radius = 1.0;     // R
  double distance = 10.0;  // A, cluster center to destination

  void validate() const {
    if (nodes < 1) throw InvalidInput("ClusterGeometry: N must be >= 1");
    if (!(radius > 0)) throw InvalidInput("ClusterGeometry: R must be > 0");
    if (!(distance > radius)) throw InvalidInput("ClusterGeometry: require A > R (far field)");
  }

  /// Disk radius holding N nodes at density rho, sqrt(N / (rho pi)).
  static double radius_for(int n, double density) {
    return std::sqrt(static_cast<double>(n) / (density * std::numbers::pi));
  }

  /// floor(rho pi R^2).
  static int nodes_for(double radius, double density) {
    return static_cast<int>(std::floor(density * std::numbers::pi * radius * radius));
  }
};

enum class GainMode { cb_bound, ct_closed_form, ideal, monte_carlo };

inline std::string_view to_string(GainMode m) {
  switch (m) {
    case GainMode::cb_bound: return "cb-bound";
    case GainMode::ct_closed_form: return "ct-closed-form";
    case GainMode::ideal: return "ideal";
    case GainMode::monte_carlo: return "monte-carlo";
  }
  return "?";
}

struct GainEstimate {
  double value = 1.0;
  GainMode mode = GainMode::ideal;
  double std_error = 0.0;
};

/// Polar node coordinates relative to the cluster center.
struct NodePlacement {
  std::vector<double> radii;
  std::vector<double> angles;
};

// Beampattern lower-bound constant.
inline constexpr double kBeamformingMu = 0.09332;

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform placement on a disk of radius R: r = R sqrt(u), psi uniform.
/// With source_at_center the first node sits at r = 0.
inline NodePlacement sample_placement(int n, double radius, bool source_at_center,
                                      std::mt19937_64& rng) {
  NodePlacement p;
  p.radii.resize(n);
  p.angles.resize(n);
  for (int k = 0; k < n; ++k) {
    const double u = unit_uniform(rng);
    const double v = unit_uniform(rng);
    p.radii[k] = (source_at_center && k == 0) ? 0.0 : radius * std::sqrt(u);
    p.angles[k] = 2.0 * std::numbers::pi * v;
  }
  return p;
}

/// Running mean/variance for one chunk of trials (Welford).
struct MomentAccumulator {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const MomentAccumulator& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(o.count);
    const double delta = o.mean - mean;
    const double n = n1 + n2;
    mean += delta * n2 / n;
    m2 += o.m2 + delta * delta * n1 * n2 / n;
    count += o.count;
  }

  double std_error() const {
    if (count < 2) return 0.0;
    const double var = m2 / static_cast<double>(count - 1);
    return std::sqrt(std::max(0.0, var) / static_cast<double>(count));
  }
};

inline constexpr std::size_t kTrialsPerChunk = 256;

/// Runs `trials` draws of sample(rng) in fixed-size chunks, each chunk with
/// its own seeded stream, and merges chunk moments in chunk order. The result
/// is identical for any worker count.
template <class Sample>
MomentAccumulator chunked_monte_carlo(std::size_t trials, std::uint64_t seed, unsigned workers,
                                      Sample&& sample) {
  const std::size_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<MomentAccumulator> parts(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    std::mt19937_64 rng(stream_seed(seed, c));
    const std::size_t begin = c * kTrialsPerChunk;
    const std::size_t end = std::min(trials, begin + kTrialsPerChunk);
    MomentAccumulator acc;
    for (std::size_t t = begin; t < end; ++t) acc.add(sample(rng));
    parts[c] = acc;
  });
  MomentAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

/// Probability that a relay at distance r decodes a BPSK packet of L symbols
/// under Rayleigh fading: (1/2 + 1/2 sqrt(P / (P + sigma^2 r^alpha)))^L.
inline double packet_success(double r, const PhyParams& phy) {
  const double p = phy.power_w * phy.antenna_const;
  const double q = phy.noise_w * std::pow(r, phy.alpha);
  return std::pow(0.5 + 0.5 * std::sqrt(p / (p + q)), phy.packet_length);
}

/// sigma^2 R^alpha / (4 P), the argument of the CT closed form.
inline double ct_argument(double radius, const PhyParams& phy) {
  return phy.noise_w * std::pow(radius, phy.alpha) / (4.0 * phy.power_w * phy.antenna_const);
}

/// 1 + (N-1) 2F1(2/alpha, -L; (alpha+2)/alpha; z), falling back to quadrature
/// of (2/R^2) int_0^R r (1 - z (r/R)^alpha)^L dr when the series is
/// ill-conditioned.
inline double ct_closed_form_value(int n, double radius, const PhyParams& phy) {
  const double z = ct_argument(radius, phy);
  if (z > 1.0) {
    throw DomainError("ct closed form: sigma^2 R^alpha / 4P = " + std::to_string(z) +
                      " exceeds the good-channel domain (<= 1)");
  }
  if (n == 1) return 1.0;
  const Hyp2F1Args args{2.0 / phy.alpha, phy.packet_length, (phy.alpha + 2.0) / phy.alpha, z};
  const auto series = hyp2f1_terminating(args);
  double f = series.value;
  if (series.cancellation_warning) {
    // normalized radius x = r / R
    const double alpha = phy.alpha;
    const int L = phy.packet_length;
    f = 2.0 * integrate_1d(
                  [&](double x) { return x * std::pow(1.0 - z * std::pow(x, alpha), L); }, 0.0,
                  1.0, Tolerance{1e-12, 0.0, 2000});
  }
  return 1.0 + (n - 1) * f;
}

}  // namespace detail

/// Directivity lower bound N / (1 + mu N lambda / R).
inline GainEstimate cb_gain_bound(const ClusterGeometry& geom, const PhyParams& phy) {
  geom.validate();
  const double n = geom.nodes;
  return {n / (1.0 + kBeamformingMu * n * phy.wavelength_m / geom.radius), GainMode::cb_bound,
          0.0};
}

/// Average directivity of a randomly placed, phase-aligned array toward
/// phi = 0, relative to one isotropic antenna. Each trial integrates the
/// azimuthal beampattern on a uniform grid (exact for the band-limited
/// pattern at the chosen resolution).
inline GainEstimate cb_gain_monte_carlo(const ClusterGeometry& geom, const PhyParams& phy,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned workers = 1) {
  geom.validate();
  phy.validate();
  if (trials < 1) throw InvalidInput("cb_gain_monte_carlo: trials must be >= 1");
  if (geom.nodes == 1) return {1.0, GainMode::monte_carlo, 0.0};

  const double k_wave = 2.0 * std::numbers::pi / phy.wavelength_m;
  const double bandwidth = 2.0 * k_wave * geom.radius;
  std::size_t grid = 64;
  while (static_cast<double>(grid) < 4.0 * bandwidth + 32.0) grid *= 2;
  std::vector<double> cos_phi(grid), sin_phi(grid);
  for (std::size_t m = 0; m < grid; ++m) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(grid);
    cos_phi[m] = std::cos(phi);
    sin_phi[m] = std::sin(phi);
  }
  const int n = geom.nodes;

  auto sample = [&](std::mt19937_64& rng) {
    const auto placement = detail::sample_placement(n, geom.radius, false, rng);
    std::vector<double> beta(n), cpsi(n), spsi(n);
    for (int k = 0; k < n; ++k) {
      beta[k] = k_wave * placement.radii[k];
      cpsi[k] = std::cos(placement.angles[k]);
      spsi[k] = std::sin(placement.angles[k]);
    }
    // Phase of node k toward phi, after alignment on phi = 0:
    // (2 pi r_k / lambda) (cos(psi_k - phi) - cos psi_k).
    KahanSum pattern;
    for (std::size_t m = 0; m < grid; ++m) {
      double re = 0.0;
      double im = 0.0;
      for (int k = 0; k < n; ++k) {
        const double c = cpsi[k] * cos_phi[m] + spsi[k] * sin_phi[m];
        const double phase = beta[k] * (c - cpsi[k]);
        re += std::cos(phase);
        im -= std::sin(phase);
      }
      pattern += (re * re + im * im) / (static_cast<double>(n) * n);
    }
    const double mean_pattern = pattern.value() / static_cast<double>(grid);
    return 1.0 / mean_pattern;
  };
  const auto acc = detail::chunked_monte_carlo(trials, seed, workers, sample);
  return {acc.mean, GainMode::monte_carlo, acc.std_error()};
}

/// Average CT energy gain at the destination under the far-field and
/// good-channel approximations.
inline GainEstimate ct_gain_closed_form(const ClusterGeometry& geom, const PhyParams& phy) {
  geom.validate();
  phy.validate();
  return {detail::ct_closed_form_value(geom.nodes, geom.radius, phy), GainMode::ct_closed_form,
          0.0};
}

/// Unapproximated CT energy gain: E[ sum_k A^alpha d_k^-alpha |h_k|^2 P_r(r_k) ]
/// with the source at the cluster center (its own term is exactly 1) and
/// relays drawn with radial density 2r/R^2.
inline GainEstimate ct_gain_monte_carlo(const ClusterGeometry& geom, const PhyParams& phy,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned workers = 1) {
  geom.validate();
  phy.validate();
  if (trials < 1) throw InvalidInput("ct_gain_monte_carlo: trials must be >= 1");
  if (geom.nodes == 1) return {1.0, GainMode::monte_carlo, 0.0};

  const double a = geom.distance;
  const int n = geom.nodes;
  auto sample = [&](std::mt19937_64& rng) {
    const auto placement = detail::sample_placement(n, geom.radius, true, rng);
    KahanSum energy;
    energy += 1.0;
    for (int k = 1; k < n; ++k) {
      const double r = placement.radii[k];
      const double d2 = a * a + r * r - 2.0 * r * a * std::cos(placement.angles[k]);
      const double fade = -std::log1p(-detail::unit_uniform(rng));
      energy += std::pow(a * a / d2, 0.5 * phy.alpha) * fade * detail::packet_success(r, phy);
    }
    return energy.value();
  };
  const auto acc = detail::chunked_monte_carlo(trials, seed, workers, sample);
  return {acc.mean, GainMode::monte_carlo, acc.std_error()};
}

enum class ClusterMode { cb, ct, ideal };

inline std::string_view to_string(ClusterMode m) {
  switch (m) {
    case ClusterMode::cb: return "cb";
    case ClusterMode::ct: return "ct";
    case ClusterMode::ideal: return "ideal";
  }
  return "?";
}

inline ClusterMode parse_cluster_mode(std::string_view s) {
  if (s == "cb") return ClusterMode::cb;
  if (s == "ct") return ClusterMode::ct;
  if (s == "ideal") return ClusterMode::ideal;
  throw InvalidInput("unknown cluster mode '" + std::string(s) + "' (expected cb|ct|ideal)");
}

inline constexpr std::int64_t kDefaultClusterCap = 1'000'000;

namespace detail {

// ceil that ignores representation noise above an integer (16.000000000000004 -> 16)
inline double ceil_clean(double x) { return std::ceil(x * (1.0 - 1e-12)); }

}  // namespace detail

/// Smallest cluster size N whose average gain meets `required_gain` when the
/// cluster radius follows the density, R = sqrt(N / (rho pi)).
inline std::int64_t invert_cluster_size(double required_gain, ClusterMode mode,
                                        const PhyParams& phy,
                                        std::int64_t n_max = kDefaultClusterCap) {
  if (!(required_gain >= 1.0)) throw InvalidInput("invert_cluster_size: gain must be >= 1");
  const double c0 = required_gain;
  if (c0 == 1.0) return 1;
  switch (mode) {
    case ClusterMode::ideal:
      return static_cast<std::int64_t>(detail::ceil_clean(c0));
    case ClusterMode::cb: {
      const double c1 = kBeamformingMu * phy.wavelength_m * std::sqrt(phy.density * std::numbers::pi);
      const double n =
          0.5 * (c0 * (2.0 + c0 * c1 * c1) + std::pow(c0, 1.5) * c1 * std::sqrt(4.0 + c0 * c1 * c1));
      return std::max<std::int64_t>(1, static_cast<std::int64_t>(detail::ceil_clean(n)));
    }
    case ClusterMode::ct: {
      phy.validate();
      // largest N inside the good-channel domain sigma^2 R^alpha / 4P <= 1
      const double r_dom = std::pow(4.0 * phy.power_w * phy.antenna_const / phy.noise_w,
                                    1.0 / phy.alpha);
      const double n_dom_real = phy.density * std::numbers::pi * r_dom * r_dom;
      const std::int64_t n_dom = std::min<std::int64_t>(
          n_max, static_cast<std::int64_t>(std::floor(n_dom_real * (1.0 + 1e-12))));
      if (n_dom < 1) throw UnreachableGain("invert_cluster_size: approximation domain empty");
      auto gain = [&](std::int64_t n) {
        return detail::ct_closed_form_value(static_cast<int>(n),
                                            ClusterGeometry::radius_for(static_cast<int>(n), phy.density),
                                            phy);
      };
      // gain(N) rises while relays are close, then falls as the cluster
      // outgrows the decoding range; locate the peak first.
      std::int64_t lo = 1;
      std::int64_t hi = n_dom;
      while (hi - lo > 2) {
        const std::int64_t m1 = lo + (hi - lo) / 3;
        const std::int64_t m2 = hi - (hi - lo) / 3;
        if (gain(m1) < gain(m2)) {
          lo = m1 + 1;
        } else {
          hi = m2;
        }
      }
      std::int64_t peak = lo;
      for (std::int64_t k = lo + 1; k <= hi; ++k) {
        if (gain(k) > gain(peak)) peak = k;
      }
      if (gain(peak) < c0) {
        throw UnreachableGain("invert_cluster_size: ct gain " + std::to_string(c0) +
                              " unreachable within N <= " + std::to_string(n_dom));
      }
      std::int64_t a = 1;
      std::int64_t b = peak;
      while (a < b) {
        const std::int64_t mid = a + (b - a) / 2;
        if (gain(mid) >= c0) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      return a;
    }
  }
  return 1;
}

}  // namespace wsnlife
