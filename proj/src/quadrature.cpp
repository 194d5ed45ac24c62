#include "metadist/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <algorithm>
#include <vector>

#include "metadist/errors.hpp"

namespace metadist::quad {

namespace {

// Kronrod abscissae; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;  // Kronrod estimate of int |f|, sets the round-off floor
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::fabs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::fabs(half);
  return {lo, hi, kronrod, std::fabs(kronrod - gauss), abs_sum};
}

double target(const QuadOptions& opts, double value) {
  return std::max(opts.abs_tol, opts.rel_tol * std::fabs(value));
}

}  // namespace

QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            const QuadOptions& opts) {
  if (!(lo < hi)) throw DomainError("integrate_finite: requires lo < hi");
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0)) {
    throw DomainError("integrate_finite: tolerance must be positive");
  }

  constexpr long kEvalsPerSegment = 15;
  std::vector<Segment> heap;
  Segment first = kronrod15(f, lo, hi);
  heap.push_back(first);
  double value = first.value;
  double error = first.error;
  double abs_value = first.abs_value;
  long evaluations = kEvalsPerSegment;
  int intervals = 1;

  while (error > target(opts, value)) {
    // Roundoff floor: an estimate this close to machine precision cannot drop.
    if (error <= 50.0 * std::numeric_limits<double>::epsilon() * abs_value) {
      break;
    }
    if (intervals >= opts.max_intervals) {
      throw ConvergenceError(
          "integrate_finite: tolerance not met within interval budget");
    }
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      throw ConvergenceError("integrate_finite: interval underflow");
    }
    Segment left = kronrod15(f, worst.lo, mid);
    Segment right = kronrod15(f, mid, worst.hi);
    evaluations += 2 * kEvalsPerSegment;
    ++intervals;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());

    // Re-summing avoids drift from repeated add/subtract of the totals.
    value = 0.0;
    error = 0.0;
    abs_value = 0.0;
    for (const Segment& s : heap) {
      value += s.value;
      error += s.error;
      abs_value += s.abs_value;
    }
  }
  return {value, error, evaluations};
}

QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            double tol) {
  return integrate_finite(f, lo, hi, QuadOptions{tol, 0.0, 2000});
}

double truncation_point(const DecayBound& bound, double tail_tol) {
  if (!(bound.rate > 0.0) || !(bound.prefactor > 0.0)) {
    throw DomainError("truncation_point: decay envelope must be positive");
  }
  // prefactor/rate * exp(-rate*z) <= tail_tol
  const double z = std::log(bound.prefactor / (bound.rate * tail_tol)) /
                   bound.rate;
  return std::max(z, std::numeric_limits<double>::min());
}

QuadResult integrate_semi_infinite_decaying(const Integrand& f,
                                            const DecayBound& bound,
                                            const QuadOptions& opts) {
  QuadOptions inner = opts;
  inner.abs_tol = 0.9 * opts.abs_tol;
  inner.rel_tol = 0.9 * opts.rel_tol;
  // Tail allowance: a tenth of the absolute tolerance.
  const double z_max = truncation_point(bound, opts.abs_tol / 10.0);
  QuadResult r = integrate_finite(f, 0.0, z_max, inner);
  return r;
}

QuadResult integrate_semi_infinite_decaying(const Integrand& f,
                                            const DecayBound& bound,
                                            double tol) {
  return integrate_semi_infinite_decaying(f, bound,
                                          QuadOptions{tol, 0.0, 2000});
}

}  // namespace metadist::quad
