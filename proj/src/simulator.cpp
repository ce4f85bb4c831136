#include "wyner/simulator.hpp"

#include "wyner/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

namespace wyner {

double plan_sum_rate(const TransmissionPlan& plan, const ChannelModel& model, double P) {
  if (P <= 0) throw InvalidInput("power must be positive");
  const int K = model.K();
  std::vector<char> on(K + 1, 0);
  for (const auto& s : plan.streams) on[s.carrier] = 1;
  for (const auto& g : plan.groups)
    for (int t : g.tx) on[t] = 1;

  double total = 0;
  for (const auto& s : plan.streams) {
    if (s.joint.empty()) {
      const double h = model.h(s.antenna, s.carrier);
      total += 0.5 * std::log1p(h * h * P);
      continue;
    }
    // zero-forcing: the part of the carrier's column orthogonal to the other active columns
    std::vector<int> others;
    for (int t = 1; t <= K; ++t) {
      if (!on[t] || t == s.carrier) continue;
      for (int a : s.joint)
        if (model.h(a, t) != 0) { others.push_back(t); break; }
    }
    const Vector c = submatrix(model, s.joint, {s.carrier}).col(0);
    Vector perp = c;
    if (!others.empty()) {
      const Matrix O = submatrix(model, s.joint, others);
      perp = c - O * O.completeOrthogonalDecomposition().solve(c);
    }
    total += 0.5 * std::log1p(P * perp.squaredNorm());
  }
  for (const auto& g : plan.groups) {
    int claimed = 0;
    for (const auto& m : g.messages) claimed += m.prelog;
    if (claimed == 0) continue;
    const Matrix Hg = submatrix(model, g.ants, g.tx);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(Hg * Hg.transpose());
    for (int i = 0; i < eig.eigenvalues().size(); ++i)
      total += 0.5 * std::log1p(P * std::max(0.0, eig.eigenvalues()(i)));
  }
  return total;
}

std::vector<double> log_powers(double lo, double hi, int n) {
  if (lo <= 0 || hi < lo || n < 2) throw InvalidInput("need 0 < lo <= hi and n >= 2");
  std::vector<double> out;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::exp(a + (b - a) * i / (n - 1)));
  return out;
}

RateCurve rate_curve(const TransmissionPlan& plan, const ChannelModel& model,
                     const std::vector<double>& powers, const std::string& plan_id) {
  RateCurve c;
  c.plan_id = plan_id.empty() ? plan.family : plan_id;
  for (double P : powers) c.points.push_back({P, plan_sum_rate(plan, model, P)});
  return c;
}

double slope_estimate(const RateCurve& c) {
  const size_t n = c.points.size();
  if (n < 2) throw InvalidInput("slope needs at least two points");
  const size_t start = n / 2 >= 2 ? n - n / 2 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n - start);
  for (size_t i = start; i < n; ++i) {
    const double x = 0.5 * std::log(c.points[i].P), y = c.points[i].rate;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double offset_proxy(int L, double alpha, double P) {
  const VSequence v = v_sequence(L + 1, alpha);
  double norm2 = 0;
  for (int j = 0; j <= L; ++j) norm2 += v.v(j) * v.v(j);
  const double w = v.v(L + 1);
  return 0.5 * std::log(P) - 0.5 * std::log1p(P * alpha * alpha * w * w / norm2);
}

OffsetResult offset_experiment(int L, double alpha_star, const std::vector<double>& deltas,
                               double P) {
  if (L < 1) throw InvalidInput("L must be at least 1");
  if (deltas.size() < 2) throw InvalidInput("need at least two offsets");
  OffsetResult r;
  r.alpha_star = alpha_star;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& root : critical_roots(L + 1).roots) {
    if (std::abs(root.alpha - alpha_star) < best) {
      best = std::abs(root.alpha - alpha_star);
      r.multiplicity = root.multiplicity;
    }
  }
  if (best > 1e-6) r.multiplicity = 0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double d : deltas) {
    if (d == 0) throw InvalidInput("offset deltas must be nonzero");
    const double a = alpha_star + d;
    const double y = offset_proxy(L, a, P);
    r.points.push_back({a, y});
    const double x = -std::log(std::abs(d));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(deltas.size());
  r.fitted_nu = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  // order by distance to alpha_star, farthest first
  std::vector<size_t> idx(deltas.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return std::abs(deltas[a]) > std::abs(deltas[b]); });
  r.increasing = true;
  for (size_t i = 1; i < idx.size(); ++i)
    r.increasing = r.increasing && r.points[idx[i]].second > r.points[idx[i - 1]].second;
  return r;
}

int first_rank_failure(const ChannelModel& model, int max_size) {
  const int K = model.K();
  for (int s = 1; s <= std::min(K, max_size); ++s)
    for (int a = 0; a + s <= K; ++a)
      if (numeric_rank(model.H.block(a, a, s, s), 1e-10) < s) return s;
  return 0;
}

RankTrialReport random_gain_rank_trials(int K, Topology topology, int trials, std::uint64_t seed) {
  if (K < 1 || trials < 0) throw InvalidInput("need K >= 1 and trials >= 0");
  RankTrialReport r;
  r.trials = trials;
  r.max_size = std::min(K, 12);
  NetworkParams p;
  p.K = K;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const ChannelModel m = build_channel(p, topology, sample_generic_gains(K, topology, s));
    const int f = first_rank_failure(m, r.max_size);
    if (f > 0) {
      ++r.failures;
      r.failing.push_back({s, f});
    }
  }
  return r;
}

void write_rate_csv(std::ostream& os, const std::vector<RateCurve>& curves) {
  os << "P,sum_rate_nats,plan_id\n" << std::setprecision(12);
  for (const auto& c : curves)
    for (const auto& pt : c.points) os << pt.P << ',' << pt.rate << ',' << c.plan_id << '\n';
}

void write_offset_csv(std::ostream& os, const OffsetResult& r) {
  os << "alpha,offset_proxy\n" << std::setprecision(12);
  for (auto [a, y] : r.points) os << a << ',' << y << '\n';
}

}  // namespace wyner
