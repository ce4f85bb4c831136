#include "wyner/dofcalc.hpp"

#include <algorithm>
#include <cmath>

namespace wyner {

int ceil_pos(int num, int den) {
  if (num <= 0) return 0;
  return (num + den - 1) / den;
}

int theta_012(int kappa) { return kappa >= 2 ? 2 : kappa; }

BoundAux bound_aux(const NetworkParams& p, const BoundOptions& opt) {
  p.validate();
  BoundAux a;
  const int K = p.K, S = p.sigma();
  a.beta = S + 2;
  a.gamma = ceil_pos(K - p.t_left - p.r_left - 1, a.beta);
  a.kappa = K % a.beta;

  a.b[1] = S;
  a.b[2] = p.t_left + p.r_left + 1;
  a.b[3] = p.r_left + p.r_right + 3;
  a.b[4] = S + 4;
  a.b[5] = S + 3;
  for (int i = 1; i <= 5; ++i) {
    if (a.b[i] == 0) continue;
    a.g[i] = K / a.b[i];
    a.k[i] = K % a.b[i];
  }
  a.th[1] = theta_012(a.k[1]);
  a.th[2] = theta_012(a.k[2]);
  a.th[3] = theta_012(a.k[3]);
  int t4 = std::min(p.t_left + p.r_left, p.t_right + p.r_right) + (opt.theta4_prose ? 1 : 2);
  a.th[4] = a.k[4] >= t4 ? 1 : 0;
  int t5 = p.t_right + p.r_right + (opt.theta5_proof ? 2 : 1);
  a.th[5] = a.k[5] >= t5 ? 1 : 0;

  const int s = p.t_left + p.r_left;
  a.kappa_t = K % (s + 2);
  a.gamma_t = K / (s + 2);
  a.delta2 = (K % (2 * s + 3)) > s + 1 ? 1 : 0;
  return a;
}

int asym_mg(const NetworkParams& p) {
  p.validate();
  return p.K - ceil_pos(p.K - p.t_left - p.r_left - 1, p.sigma() + 2);
}

Rational asym_mg_per_user(const NetworkParams& p) {
  return Rational(p.sigma() + 1, p.sigma() + 2);
}

bool symmetric_si(const NetworkParams& p) {
  return p.t_left + p.r_left == p.t_right + p.r_right;
}

namespace {

int clip(int v, int K) { return std::clamp(v, 0, K); }

BoundValue pair_silencing(const std::string& label, int K, int beta, int theta) {
  BoundValue b;
  b.label = label;
  if (beta <= 0) {
    b.applicable = false;
    b.reason = "beta = 0";
    return b;
  }
  b.value = clip(K - 2 * (K / beta) - theta, K);
  return b;
}

void require_sym_si(const NetworkParams& p) {
  if (!symmetric_si(p))
    throw InvalidInput("requires symmetric side-information (tl + rl == tr + rr)");
}

}  // namespace

DofInterval sym_mg_symmetric_si(const NetworkParams& p, const Alpha& alpha) {
  p.validate();
  require_sym_si(p);
  if (alpha.value == 0) throw InvalidInput("nonzero cross-gain required");
  const int K = p.K, s = p.t_left + p.r_left;
  DofInterval d;
  auto set = [&](int lo, int hi, const std::string& by) {
    d.lower = lo;
    d.upper = hi;
    d.lower_by = d.upper_by = by;
    d.bounds.push_back({"SI-lower", lo, true, ""});
    d.bounds.push_back({"SI-upper", hi, true, ""});
  };
  if (K <= s + 1) {
    int v = K - (u_is_zero(K, alpha) ? 1 : 0);
    set(v, v, "SI case 1");
    return d;
  }
  if (K == s + 2) {
    DofInterval g = sym_dof_interval(p, alpha);
    g.lower_by = "general bounds (" + g.lower_by + ")";
    g.upper_by = "general bounds (" + g.upper_by + ")";
    return g;
  }
  const BoundAux a = bound_aux(p);
  if (!u_is_zero(s + 1, alpha)) {
    const int top = K - a.gamma_t;
    if (!u_is_zero(s, alpha)) {
      set(top, top, "SI case 3");
    } else if (a.kappa_t == 0 || !u_is_zero(a.kappa_t, alpha)) {
      set(top, top, "SI case 2 full-rank tail");
    } else {
      set(top - 1, top, "SI case 2");
    }
    return d;
  }
  set(K - K / (s + 1), K - 2 * (K / (2 * s + 3)) - a.delta2, "SI case 4");
  return d;
}

PerUserAsymptote sym_mg_per_user(const NetworkParams& p, const Alpha& alpha) {
  require_sym_si(p);
  const int s = p.t_left + p.r_left;
  PerUserAsymptote a;
  if (!u_is_zero(s + 1, alpha)) {
    a.lower = a.upper = Rational(s + 1, s + 2);
  } else {
    a.lower = Rational(s, s + 1);
    a.upper = Rational(2 * s + 1, 2 * s + 3);
  }
  return a;
}

std::vector<BoundValue> sym_lower_bounds(const NetworkParams& p) {
  const BoundAux a = bound_aux(p);
  const int K = p.K;
  std::vector<BoundValue> out;
  out.push_back(pair_silencing("LB1", K, a.b[1], a.th[1]));
  out.push_back(pair_silencing("LB2", K, a.b[2], a.th[2]));
  NetworkParams m = p.mirrored();
  const BoundAux am = bound_aux(m);
  out.push_back(pair_silencing("LB3", K, am.b[2], am.th[2]));
  out.push_back(pair_silencing("LB4", K, a.b[3], a.th[3]));
  return out;
}

std::vector<BoundValue> sym_upper_bounds(const NetworkParams& p, const std::optional<Alpha>& alpha,
                                         const BoundOptions& opt) {
  const BoundAux a = bound_aux(p, opt);
  const int K = p.K;
  std::vector<BoundValue> out;
  out.push_back(pair_silencing("UB1", K, a.b[4], a.th[4]));

  const BoundAux am = bound_aux(p.mirrored(), opt);
  BoundValue ub2 = pair_silencing("UB2", K, a.b[5], a.th[5]);
  BoundValue ub3 = pair_silencing("UB3", K, am.b[5], am.th[5]);
  if (!alpha) {
    ub2.applicable = ub3.applicable = false;
    ub2.reason = ub3.reason = "needs equal cross-gains";
  } else {
    if (!u_is_zero(p.t_left + p.r_left + 1, *alpha)) {
      ub2.applicable = false;
      ub2.reason = "u_{tl+rl+1}(alpha) != 0";
    }
    if (!u_is_zero(p.t_right + p.r_right + 1, *alpha)) {
      ub3.applicable = false;
      ub3.reason = "u_{tr+rr+1}(alpha) != 0";
    }
  }
  out.push_back(ub2);
  out.push_back(ub3);
  return out;
}

DofInterval sym_dof_interval(const NetworkParams& p, const std::optional<Alpha>& alpha,
                             const BoundOptions& opt) {
  p.validate();
  DofInterval d;
  d.bounds = sym_lower_bounds(p);
  auto ub = sym_upper_bounds(p, alpha, opt);
  d.bounds.insert(d.bounds.end(), ub.begin(), ub.end());
  d.bounds.push_back({"trivial", p.K, true, ""});

  d.lower = -1;
  d.upper = p.K + 1;
  const int s = p.t_left + p.r_left;
  if (alpha && symmetric_si(p) && p.K != s + 2) {
    DofInterval t = sym_mg_symmetric_si(p, *alpha);
    d.lower = t.lower;
    d.lower_by = t.lower_by;
    d.upper = t.upper;
    d.upper_by = t.upper_by;
    d.bounds.insert(d.bounds.end(), t.bounds.begin(), t.bounds.end());
  }
  for (const auto& b : d.bounds) {
    if (!b.applicable) continue;
    if (b.label.rfind("LB", 0) == 0 && b.value > d.lower) {
      d.lower = b.value;
      d.lower_by = b.label;
    }
    if ((b.label.rfind("UB", 0) == 0 || b.label == "trivial") && b.value < d.upper) {
      d.upper = b.value;
      d.upper_by = b.label;
    }
  }
  return d;
}

DofInterval dof_interval(const ChannelModel& m, const std::optional<Alpha>& alpha,
                         const BoundOptions& opt) {
  if (m.topology == Topology::Asymmetric) {
    DofInterval d;
    d.lower = d.upper = asym_mg(m.params);
    d.lower_by = d.upper_by = "asym-exact";
    d.bounds.push_back({"asym-exact", d.lower, true, ""});
    return d;
  }
  std::optional<Alpha> a = m.equal_gains() ? alpha : std::nullopt;
  if (m.equal_gains() && !a) a = Alpha::of(m.gains.alpha);
  return sym_dof_interval(m.params, a, opt);
}

double power_offset_prediction(int L, double alpha, double alpha_star, double nu) {
  if (L < 1) throw InvalidInput("L must be at least 1");
  if (alpha == alpha_star) throw InvalidInput("offset prediction is infinite at alpha = alpha*");
  return -nu * std::log(std::abs(alpha - alpha_star));
}

nlohmann::json to_json(const DofInterval& d) {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& x : d.bounds) {
    nlohmann::json e = {{"label", x.label}, {"value", x.value}, {"applicable", x.applicable}};
    if (!x.reason.empty()) e["reason"] = x.reason;
    b.push_back(e);
  }
  return {{"interval",
           {{"lower", d.lower},
            {"upper", d.upper},
            {"exact", d.exact()},
            {"lower_by", d.lower_by},
            {"upper_by", d.upper_by}}},
          {"bounds", b}};
}

nlohmann::json to_json(const PerUserAsymptote& a) {
  return {{"lower", a.lower.str()}, {"upper", a.upper.str()}, {"exact", a.exact()}};
}

}  // namespace wyner
