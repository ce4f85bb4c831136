// Finite-SNR rates of certified plans, pre-log slopes, power-offset growth, random-gain ranks.
#pragma once

#include "wyner/netmodel.hpp"
#include "wyner/schemes.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wyner {

// Sum rate in nats per channel use at per-transmitter power P.
double plan_sum_rate(const TransmissionPlan& plan, const ChannelModel& model, double P);

struct RatePoint {
  double P = 0, rate = 0;
};

struct RateCurve {
  std::string plan_id;
  std::vector<RatePoint> points;
};

// n powers log-spaced over [lo, hi].
std::vector<double> log_powers(double lo, double hi, int n);
RateCurve rate_curve(const TransmissionPlan& plan, const ChannelModel& model,
                     const std::vector<double>& powers, const std::string& plan_id = "");
// Least-squares slope of rate against 1/2 ln P over the upper half of the points.
double slope_estimate(const RateCurve& c);

struct OffsetResult {
  double alpha_star = 0;
  int multiplicity = 0;
  std::vector<std::pair<double, double>> points;  // (alpha, offset proxy)
  double fitted_nu = 0;
  bool increasing = false;  // proxy grows as alpha approaches alpha_star
};

// Converse-side offset proxy 1/2 ln P - 1/2 ln(1 + P alpha^2 v_{L+1}^2 / |v_0..v_L|^2).
double offset_proxy(int L, double alpha, double P);
// alpha = alpha_star + delta for each delta; root of u_{L+1} nearest alpha_star sets the multiplicity.
OffsetResult offset_experiment(int L, double alpha_star, const std::vector<double>& deltas,
                               double P = 1e14);

struct RankTrialReport {
  int trials = 0, failures = 0;
  int max_size = 0;
  std::vector<std::pair<std::uint64_t, int>> failing;  // (seed, first failing size)
};

// First size s such that some contiguous s x s principal submatrix is rank deficient, or 0.
int first_rank_failure(const ChannelModel& model, int max_size);
RankTrialReport random_gain_rank_trials(int K, Topology topology, int trials, std::uint64_t seed);

void write_rate_csv(std::ostream& os, const std::vector<RateCurve>& curves);
void write_offset_csv(std::ostream& os, const OffsetResult& r);

}  // namespace wyner
