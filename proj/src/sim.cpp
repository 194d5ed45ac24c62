#include "metadist/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "metadist/errors.hpp"

namespace metadist::sim {

namespace {

constexpr long kMaxRedraws = 100'000'000;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Squared distances with the serving (nearest) BS moved to the front.
std::vector<double> sorted_front_d2(std::span<const Point> points) {
  if (points.empty()) {
    throw EmptyRealizationError("realization contains no base station");
  }
  std::vector<double> d2;
  d2.reserve(points.size());
  for (const Point& p : points) d2.push_back(p.x * p.x + p.y * p.y);
  auto nearest = std::min_element(d2.begin(), d2.end());
  std::iter_swap(d2.begin(), nearest);
  return d2;
}

// (r0/ri)^gamma for every interferer.
std::vector<double> interference_ratios(const std::vector<double>& d2,
                                        double gamma_pl) {
  std::vector<double> ratios;
  ratios.reserve(d2.size() - 1);
  const double half_gamma = 0.5 * gamma_pl;
  for (std::size_t i = 1; i < d2.size(); ++i) {
    ratios.push_back(std::pow(d2[0] / d2[i], half_gamma));
  }
  return ratios;
}

double one_sample(const SimConfig& config, std::uint64_t index,
                  long& redraws) {
  Rng rng = realization_rng(config.rng_seed, index);
  std::vector<Point> points = draw_ppp(config, rng);
  while (points.empty()) {
    if (++redraws > kMaxRedraws) {
      throw EmptyRealizationError("too many empty realizations");
    }
    points = draw_ppp(config, rng);
  }
  if (config.fading_mode == FadingMode::sampled) {
    return ccp_sampled(points, config.params, config.num_channel_draws, rng);
  }
  return ccp_analytic(points, config.params);
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  if (!(region_radius > 0.0)) throw DomainError("region radius must be positive");
  if (num_realizations < 1) throw DomainError("need at least one realization");
  if (num_channel_draws < 1) throw DomainError("need at least one channel draw");
  if (num_threads < 0) throw DomainError("thread count must be nonnegative");
}

Rng realization_rng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= index * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

std::vector<Point> draw_ppp(const SimConfig& config, Rng& rng) {
  const double r = config.region_radius;
  const double mean = config.params.lambda_bs * std::numbers::pi * r * r;
  std::poisson_distribution<long> count_dist(mean);
  const long count = count_dist(rng);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double radius = r * std::sqrt(uniform_open(rng));
    const double angle = 2.0 * std::numbers::pi * uniform_open(rng);
    points.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return points;
}

double ccp_analytic(std::span<const Point> points, const SystemParams& params) {
  const std::vector<double> d2 = sorted_front_d2(points);
  if (params.theta == 0.0) return 1.0;
  const double r0_gamma = std::pow(d2[0], 0.5 * params.gamma_pl);
  double log_ccp = -params.theta * params.noise * r0_gamma / params.power;
  for (double ratio : interference_ratios(d2, params.gamma_pl)) {
    log_ccp -= std::log1p(params.theta * ratio);
  }
  return std::exp(log_ccp);
}

double ccp_sampled(std::span<const Point> points, const SystemParams& params,
                   int num_draws, Rng& rng) {
  if (num_draws < 1) throw DomainError("ccp_sampled: need at least one draw");
  const std::vector<double> d2 = sorted_front_d2(points);
  const std::vector<double> ratios = interference_ratios(d2, params.gamma_pl);
  // SINR > theta  <=>  g0 > theta * (sum_i g_i (r0/ri)^gamma + noise r0^gamma / p)
  const double noise_term =
      params.noise * std::pow(d2[0], 0.5 * params.gamma_pl) / params.power;
  long covered = 0;
  for (int draw = 0; draw < num_draws; ++draw) {
    const double g0 = exponential(rng);
    double interference = 0.0;
    for (double ratio : ratios) interference += exponential(rng) * ratio;
    if (g0 > params.theta * (interference + noise_term)) ++covered;
  }
  return static_cast<double>(covered) / num_draws;
}

EmpiricalMeta run_campaign(const SimConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.num_realizations);
  std::vector<double> samples(n);
  std::vector<long> redraws(n, 0);

  unsigned workers = config.num_threads > 0
                         ? static_cast<unsigned>(config.num_threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      samples[i] = one_sample(config, i, redraws[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  EmpiricalMeta emp{std::move(samples), config, 0};
  for (long r : redraws) emp.empty_redraws += r;
  return emp;
}

MomentSequence empirical_moments(const EmpiricalMeta& emp, int max_n) {
  if (emp.ccp_samples.empty()) {
    throw DomainError("empirical_moments: no samples");
  }
  if (max_n < 0) throw DomainError("empirical_moments: negative order");
  std::vector<long double> sums(max_n + 1, 0.0L);
  for (double c : emp.ccp_samples) {
    long double power = 1.0L;
    for (int k = 0; k <= max_n; ++k) {
      sums[k] += power;
      power *= c;
    }
  }
  MomentSequence seq{{}, MomentMethod::empirical, emp.config.params};
  const auto count = static_cast<long double>(emp.ccp_samples.size());
  for (long double s : sums) seq.values.push_back(static_cast<double>(s / count));
  return seq;
}

double empirical_reliability_sorted(std::span<const double> sorted, double x) {
  if (sorted.empty()) throw DomainError("empirical_reliability: no samples");
  const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(above) / static_cast<double>(sorted.size());
}

double empirical_reliability(const EmpiricalMeta& emp, double x) {
  std::vector<double> sorted = emp.ccp_samples;
  std::sort(sorted.begin(), sorted.end());
  return empirical_reliability_sorted(sorted, x);
}

}  // namespace metadist::sim
