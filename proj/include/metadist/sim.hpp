#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "metadist/moments.hpp"

// Monte Carlo ground truth for the conditional coverage probability: PPP base
// stations on a disk around a typical user at the origin, Rayleigh fading,
// nearest-BS association.

namespace metadist::sim {

enum class FadingMode { analytic, sampled };

struct SimConfig {
  SystemParams params;
  double region_radius = 500.0;  // m
  int num_realizations = 5000;
  FadingMode fading_mode = FadingMode::analytic;
  int num_channel_draws = 700;
  std::uint64_t rng_seed = 0;
  // Worker threads for run_campaign; 0 picks the hardware concurrency.
  // Results do not depend on this value.
  int num_threads = 0;

  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct EmpiricalMeta {
  std::vector<double> ccp_samples;
  SimConfig config;
  // Realizations that came out empty and were drawn again.
  long empty_redraws = 0;
};

using Rng = std::mt19937_64;

// Independent stream for one realization, derived from (seed, index) only.
Rng realization_rng(std::uint64_t seed, std::uint64_t index);

// Uniform on (0,1); never returns either endpoint.
double uniform_open(Rng& rng);

// Exp(1) variate, strictly positive.
double exponential(Rng& rng);

// Poisson(lambda*pi*R^2) points, uniform on the disk of radius R.
std::vector<Point> draw_ppp(const SimConfig& config, Rng& rng);

// exp(-theta*noise*r0^gamma/p) * prod_{i != serving} 1/(1 + theta (r0/ri)^gamma)
// evaluated in log space; the serving BS is the nearest point.
// Throws EmptyRealizationError for an empty point list.
double ccp_analytic(std::span<const Point> points, const SystemParams& params);

// Fraction of num_draws independent Rayleigh fading draws with SINR > theta.
double ccp_sampled(std::span<const Point> points, const SystemParams& params,
                   int num_draws, Rng& rng);

// One CCP sample per realization. Empty realizations are redrawn from the
// same stream. Output is identical for every thread count.
EmpiricalMeta run_campaign(const SimConfig& config);

// mu_n = mean(c_i^n) for n = 0..max_n.
MomentSequence empirical_moments(const EmpiricalMeta& emp, int max_n);

// Fraction of samples strictly greater than x.
double empirical_reliability(const EmpiricalMeta& emp, double x);

// Same, over a sample list sorted ascending.
double empirical_reliability_sorted(std::span<const double> sorted, double x);

}  // namespace metadist::sim
