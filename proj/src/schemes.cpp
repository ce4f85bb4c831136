#include "wyner/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace wyner {

namespace {

constexpr double kZero = 1e-12;

const std::vector<std::pair<StrategyTag, const char*>>& tag_names() {
  static const std::vector<std::pair<StrategyTag, const char*>> names = {
      {StrategyTag::SingleUserSICLeft, "SingleUserSICLeft"},
      {StrategyTag::DPCLeft, "DPCLeft"},
      {StrategyTag::DPCRightScaled, "DPCRightScaled"},
      {StrategyTag::SingleUserSICRight, "SingleUserSICRight"},
      {StrategyTag::MimoP2P, "MimoP2P"},
      {StrategyTag::MimoBC, "MimoBC"},
      {StrategyTag::MimoMAC, "MimoMAC"},
      {StrategyTag::DoublePairSICLeft, "DoublePairSICLeft"},
      {StrategyTag::DoublePairDPC, "DoublePairDPC"},
      {StrategyTag::MirroredDoublePair, "MirroredDoublePair"},
      {StrategyTag::CentralMimoDecode, "CentralMimoDecode"},
      {StrategyTag::Skipped, "Skipped"},
      {StrategyTag::Silenced, "Silenced"},
  };
  return names;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Maximal runs of indices in [1,K] that are not in `holes`.
std::vector<std::pair<int, int>> runs_between(int K, const std::vector<int>& holes) {
  std::vector<char> off(K + 2, 0);
  for (int h : holes) off[h] = 1;
  std::vector<std::pair<int, int>> out;
  int k = 1;
  while (k <= K) {
    if (off[k]) { ++k; continue; }
    int a = k;
    while (k <= K && !off[k]) ++k;
    out.push_back({a, k - 1});
  }
  return out;
}

Stream make_stream(int msg, int carrier, int antenna, std::vector<int> dpc, StrategyTag tag) {
  Stream s;
  s.msg = msg;
  s.carrier = carrier;
  s.antenna = antenna;
  s.dpc = std::move(dpc);
  s.tag = tag;
  return s;
}

// Reindex a stream built in local block coordinates.
Stream mapped(Stream s, const std::function<int(int)>& f) {
  s.msg = f(s.msg);
  s.carrier = f(s.carrier);
  s.antenna = f(s.antenna);
  for (int& d : s.dpc) d = f(d);
  for (int& j : s.joint) j = f(j);
  std::sort(s.dpc.begin(), s.dpc.end());
  std::sort(s.joint.begin(), s.joint.end());
  return s;
}

void finish(TransmissionPlan& plan) {
  plan.silenced = sorted_unique(plan.silenced);
  int total = static_cast<int>(plan.streams.size());
  for (const auto& g : plan.groups)
    for (const auto& m : g.messages) total += m.prelog;
  plan.claimed_dof = total;
}

// ---- asymmetric subnets ----------------------------------------------------

// Groups G1..G4 on a block with local indices 1.., given (possibly reduced) parameters.
std::vector<Stream> asym_block(int tl, int tr, int rl, int rr) {
  std::vector<Stream> out;
  for (int k = 1; k <= rl + 1; ++k)
    out.push_back(make_stream(k, k, k, {}, StrategyTag::SingleUserSICLeft));
  for (int k = rl + 2; k <= rl + tl + 1; ++k)
    out.push_back(make_stream(k, k, k, {k - 1}, StrategyTag::DPCLeft));
  if (rr > 0) {
    for (int k = rl + tl + 2; k <= rl + tl + tr + 1; ++k)
      out.push_back(make_stream(k, k, k + 1, {k + 1}, StrategyTag::DPCRightScaled));
    for (int k = rl + tl + tr + 2; k <= rl + tl + tr + rr + 1; ++k)
      out.push_back(make_stream(k, k, k + 1, {}, StrategyTag::SingleUserSICRight));
  } else {
    // Without right receive cooperation transmitter k carries M_{k+1}.
    for (int k = rl + tl + 2; k <= rl + tl + tr + 1; ++k)
      out.push_back(make_stream(k + 1, k, k + 1, {k + 1}, StrategyTag::DPCRightScaled));
  }
  return out;
}

std::array<int, 4> eq_param(const NetworkParams& p, int kappa) {
  auto pos = [](int v) { return std::max(0, v); };
  const int rl = std::min(kappa - 1, p.r_left);
  const int tl = std::min(pos(kappa - p.r_left - 1), p.t_left);
  const int tr = std::min(pos(kappa - p.r_left - p.t_left - 2), p.t_right);
  const int rr = std::min(pos(kappa - p.r_left - p.t_left - p.t_right - 2), p.r_right);
  return {tl, tr, rl, rr};
}

// ---- symmetric MIMO blocks -------------------------------------------------

struct LocalMsg {
  std::vector<int> tx, ants;
  int prelog;
};

bool polymatroid_ok(const Matrix& H, const std::vector<LocalMsg>& msgs) {
  const int n = static_cast<int>(msgs.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::set<int> rows, cols;
    int need = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      need += msgs[i].prelog;
      rows.insert(msgs[i].ants.begin(), msgs[i].ants.end());
      cols.insert(msgs[i].tx.begin(), msgs[i].tx.end());
    }
    if (need == 0) continue;
    Matrix S(rows.size(), cols.size());
    int r = 0;
    for (int a : rows) {
      int c = 0;
      for (int t : cols) S(r, c++) = H(a - 1, t - 1);
      ++r;
    }
    if (need > numeric_rank(S)) return false;
  }
  return true;
}

MimoGroup sym_block(const NetworkParams& p, const Alpha& alpha, int first, int kappa,
                    bool claim_full) {
  const int tl = std::max(0, kappa - 1 - p.r_left), rl = kappa - 1 - tl;
  const int tr = std::max(0, kappa - 1 - p.r_right), rr = kappa - 1 - tr;
  std::vector<int> all;
  for (int k = 1; k <= kappa; ++k) all.push_back(k);
  std::vector<std::pair<int, LocalMsg>> msgs;  // local message index
  MimoGroup g;
  if (rl + rr == tl + tr) {
    g.tag = StrategyTag::MimoP2P;
    msgs.push_back({tr + 1, {all, all, kappa}});
  } else if (rl + rr < tl + tr) {
    g.tag = StrategyTag::MimoBC;
    std::vector<int> lead;
    for (int k = 1; k <= rl + 1; ++k) lead.push_back(k);
    msgs.push_back({rl + 1, {all, lead, rl + 1}});
    for (int k = rl + 2; k <= tr; ++k) msgs.push_back({k, {all, {k}, 1}});
    std::vector<int> tail;
    for (int k = tr + 1; k <= kappa; ++k) tail.push_back(k);
    msgs.push_back({tr + 1, {all, tail, rr + 1}});
  } else {
    g.tag = StrategyTag::MimoMAC;
    std::vector<int> head, tail;
    for (int k = 1; k <= tr + 1; ++k) head.push_back(k);
    for (int k = rl + 1; k <= kappa; ++k) tail.push_back(k);
    msgs.push_back({tr + 1, {head, all, tr + 1}});
    for (int k = tr + 2; k <= rl; ++k) msgs.push_back({k, {{k}, all, 1}});
    msgs.push_back({rl + 1, {tail, all, tl + 1}});
  }

  if (!claim_full) {
    const int target = rank_H(kappa, alpha);
    const Matrix Hk = H_p(kappa, alpha.value);
    std::vector<LocalMsg> lm;
    for (auto& [m, x] : msgs) lm.push_back(x);
    int total = 0;
    for (auto& x : lm) total += x.prelog;
    while (total > target) {
      bool done = false;
      for (auto& x : lm) {
        if (x.prelog == 0) continue;
        --x.prelog;
        if (polymatroid_ok(Hk, lm)) { done = true; break; }
        ++x.prelog;
      }
      if (!done) {
        for (auto& x : lm)
          if (x.prelog > 0) { --x.prelog; break; }
      }
      --total;
    }
    for (size_t i = 0; i < msgs.size(); ++i) msgs[i].second.prelog = lm[i].prelog;
  }

  auto glob = [&](const std::vector<int>& v) {
    std::vector<int> o;
    for (int k : v) o.push_back(first - 1 + k);
    return o;
  };
  g.tx = g.ants = glob(all);
  for (auto& [m, x] : msgs) g.messages.push_back({first - 1 + m, glob(x.tx), glob(x.ants), x.prelog});
  return g;
}

// ---- pair-silencing lower-bound schemes ------------------------------------

// Double-pair scheme on a block whose receivers are local 1..n and transmitters 2..n-1.
std::vector<Stream> lb2_block(int rl, int tl) {
  std::vector<Stream> out;
  if (rl >= 1) {
    for (int k = 2; k <= std::min(rl + 1, rl + tl); ++k)
      out.push_back(make_stream(k, k, k - 1, {}, StrategyTag::DoublePairSICLeft));
    for (int k = rl + 2; k <= rl + tl; ++k)
      out.push_back(make_stream(k, k, k - 1, {k - 1, k - 2}, StrategyTag::DoublePairDPC));
  } else {
    for (int k = 2; k <= tl; ++k)
      out.push_back(make_stream(k - 1, k, k - 1, {k - 1, k - 2}, StrategyTag::DoublePairDPC));
  }
  return out;
}

std::vector<Stream> lb4_block(int rl, int rr) {
  std::vector<Stream> out;
  for (int k = 2; k <= rl + 1; ++k)
    out.push_back(make_stream(k, k, k - 1, {}, StrategyTag::DoublePairSICLeft));
  Stream c = make_stream(rl + 2, rl + 2, rl + 2, {}, StrategyTag::CentralMimoDecode);
  for (int a = 2; a <= rl + rr + 2; ++a) c.joint.push_back(a);
  out.push_back(c);
  for (int k = rl + 3; k <= rl + rr + 2; ++k)
    out.push_back(make_stream(k, k, k + 1, {}, StrategyTag::SingleUserSICRight));
  return out;
}

// Silence transmitters {m b + 1} and {m b}, plus the tail pair, and run `block` on
// each receiver window. `block(first, n)` returns streams in global indices.
TransmissionPlan pair_silencing(const NetworkParams& p, int beta, const std::string& family,
                                const std::function<std::vector<Stream>(int, int)>& block) {
  TransmissionPlan plan;
  plan.params = p;
  plan.topology = Topology::Symmetric;
  plan.family = family;
  const int K = p.K, gamma = K / beta, kappa = K % beta, theta = theta_012(kappa);
  for (int m = 0; m < gamma; ++m) plan.silenced.push_back(m * beta + 1);
  for (int m = 1; m <= gamma; ++m) plan.silenced.push_back(m * beta);
  if (theta >= 1) plan.silenced.push_back(gamma * beta + 1);
  if (theta == 2) plan.silenced.push_back(K);
  auto add = [&](int first, int n, bool reduced) {
    Subnet sn;
    sn.rx = irange(first, first + n - 1, K);
    sn.tx = irange(first + 1, first + n - 2, K);
    sn.reduced = reduced;
    plan.subnets.push_back(sn);
    auto s = block(first, n);
    plan.streams.insert(plan.streams.end(), s.begin(), s.end());
  };
  for (int m = 1; m <= gamma; ++m) add((m - 1) * beta + 1, beta, false);
  if (theta == 2) add(gamma * beta + 1, kappa, true);
  finish(plan);
  return plan;
}

std::vector<Stream> shift(const std::vector<Stream>& v, int first) {
  std::vector<Stream> out;
  for (const auto& s : v) out.push_back(mapped(s, [first](int k) { return first - 1 + k; }));
  return out;
}

// Mirror-image double-pair streams on receivers first..first+n-1.
std::vector<Stream> mirrored_lb2(int rr, int tr, int first, int n) {
  std::vector<Stream> out;
  for (auto s : lb2_block(rr, tr)) {
    s.tag = StrategyTag::MirroredDoublePair;
    out.push_back(mapped(s, [first, n](int j) { return first + n - j; }));
  }
  return out;
}

TransmissionPlan lb1_plan(const NetworkParams& p) {
  const int left = p.t_left + p.r_left;
  if (p.sigma() < 2) throw NotApplicable("LB1 needs tl+tr+rl+rr >= 2");
  return pair_silencing(p, p.sigma(), "SymPropLB1", [&](int first, int n) {
    std::vector<Stream> out;
    if (n < 2) return out;
    const int x = std::clamp(left, 1, n - 1), y = n - x;
    const int rl = std::min(x, p.r_left), tl = std::min(std::max(0, x - p.r_left), p.t_left);
    out = shift(lb2_block(rl, tl), first);
    const int rr = std::min(y, p.r_right), tr = std::min(std::max(0, y - p.r_right), p.t_right);
    auto r = mirrored_lb2(rr, tr, first + x - 1, y + 1);
    out.insert(out.end(), r.begin(), r.end());
    return out;
  });
}

TransmissionPlan lb2_plan(const NetworkParams& p, const std::string& family) {
  const int beta = p.t_left + p.r_left + 1;
  return pair_silencing(p, beta, family, [&](int first, int n) {
    const int rl = std::min(n - 1, p.r_left);
    const int tl = std::min(std::max(0, n - p.r_left - 1), p.t_left);
    return shift(lb2_block(rl, tl), first);
  });
}

TransmissionPlan lb4_plan(const NetworkParams& p) {
  const int beta = p.r_left + p.r_right + 3;
  return pair_silencing(p, beta, "SymPropLB4", [&](int first, int n) {
    if (n < 3) return std::vector<Stream>{};
    const int rl = std::min(p.r_left, n - 3), rr = n - 3 - rl;
    return shift(lb4_block(rl, rr), first);
  });
}

TransmissionPlan reflect(TransmissionPlan plan, const NetworkParams& orig) {
  const int K = orig.K;
  auto f = [K](int k) { return K + 1 - k; };
  plan.params = orig;
  for (int& s : plan.silenced) s = f(s);
  plan.silenced = sorted_unique(plan.silenced);
  for (auto& sn : plan.subnets) {
    for (int& k : sn.tx) k = f(k);
    for (int& k : sn.rx) k = f(k);
    std::sort(sn.tx.begin(), sn.tx.end());
    std::sort(sn.rx.begin(), sn.rx.end());
  }
  for (auto& s : plan.streams) {
    s = mapped(s, f);
    s.tag = StrategyTag::MirroredDoublePair;
  }
  return plan;
}

// ---- certification helpers -------------------------------------------------

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "{" + s + "}";
}

}  // namespace

const char* to_string(StrategyTag t) {
  for (const auto& [k, n] : tag_names())
    if (k == t) return n;
  return "?";
}

StrategyTag tag_from_string(const std::string& s) {
  for (const auto& [k, n] : tag_names())
    if (s == n) return k;
  throw InvalidInput("unknown strategy tag: " + s);
}

std::map<int, int> TransmissionPlan::prelogs() const {
  std::map<int, int> out;
  for (int m = 1; m <= params.K; ++m) out[m] = 0;
  for (const auto& s : streams) out[s.msg] += 1;
  for (const auto& g : groups)
    for (const auto& m : g.messages) out[m.msg] += m.prelog;
  return out;
}

std::map<int, StrategyTag> TransmissionPlan::strategies() const {
  std::map<int, StrategyTag> out;
  for (int m = 1; m <= params.K; ++m)
    out[m] = contains(silenced, m) ? StrategyTag::Silenced : StrategyTag::Skipped;
  for (const auto& g : groups)
    for (const auto& m : g.messages)
      if (m.prelog > 0) out[m.msg] = g.tag;
  for (const auto& s : streams) out[s.msg] = s.tag;
  return out;
}

TransmissionPlan asym_plan_from_silenced(const NetworkParams& p, std::vector<int> silenced,
                                         const std::string& family) {
  p.validate();
  TransmissionPlan plan;
  plan.params = p;
  plan.topology = Topology::Asymmetric;
  plan.family = family;
  plan.silenced = sorted_unique(std::move(silenced));
  const int K = p.K, beta = p.sigma() + 2;
  for (auto [a, b] : runs_between(K, plan.silenced)) {
    Subnet sn;
    sn.tx = irange(a, b, K);
    sn.rx = irange(a, std::min(b + 1, K), K);
    const int n_tx = static_cast<int>(sn.tx.size()), n_rx = static_cast<int>(sn.rx.size());
    const bool generic = n_rx == beta && n_tx == beta - 1;
    const int kappa = n_rx <= p.t_left + p.r_left + 1 ? n_tx : n_rx;
    const auto q = generic ? std::array<int, 4>{p.t_left, p.t_right, p.r_left, p.r_right}
                           : eq_param(p, kappa);
    sn.reduced = !generic;
    if (!generic) sn.reduced_params = q;
    for (const auto& s : asym_block(q[0], q[1], q[2], q[3])) {
      if (s.carrier > n_tx || s.antenna > n_rx || s.msg > n_rx) continue;
      Stream g = mapped(s, [a](int k) { return a - 1 + k; });
      g.dpc.erase(std::remove_if(g.dpc.begin(), g.dpc.end(),
                                 [&](int d) { return d > b || contains(plan.silenced, d); }),
                  g.dpc.end());
      plan.streams.push_back(g);
    }
    plan.subnets.push_back(sn);
  }
  finish(plan);
  return plan;
}

TransmissionPlan asym_plan(const NetworkParams& p) {
  p.validate();
  const int K = p.K, beta = p.sigma() + 2;
  std::vector<int> sil;
  for (int j = 1; j <= K / beta; ++j) sil.push_back(j * beta);
  if (K % beta > p.t_left + p.r_left + 1) sil.push_back(K);
  return asym_plan_from_silenced(p, sil, "AsymTheorem1");
}

std::vector<TransmissionPlan> fair_time_sharing_plan(const NetworkParams& p) {
  p.validate();
  const int K = p.K, beta = p.sigma() + 2;
  std::vector<TransmissionPlan> out;
  // the unshifted pattern {j beta} first
  for (int r = 0; r < beta; ++r) {
    const int i = r == 0 ? beta : r;
    std::vector<int> sil;
    for (int k = i; k <= K; k += beta) sil.push_back(k);
    const int last = sil.empty() ? 0 : sil.back();
    if (K - last > p.t_left + p.r_left + 1) sil.push_back(K);
    out.push_back(asym_plan_from_silenced(p, sil, "AsymTheorem1Shift" + std::to_string(i)));
  }
  return out;
}

TransmissionPlan sym_pair_silencing_plan(const NetworkParams& p, const Alpha& alpha,
                                         std::vector<int> silenced, const std::string& family,
                                         bool claim_full) {
  p.validate();
  TransmissionPlan plan;
  plan.params = p;
  plan.topology = Topology::Symmetric;
  plan.family = family;
  plan.silenced = sorted_unique(std::move(silenced));
  const int s = std::min(p.t_left + p.r_left, p.t_right + p.r_right);
  for (auto [a, b] : runs_between(p.K, plan.silenced)) {
    const int kappa = b - a + 1;
    if (kappa > s + 1)
      throw InvalidInput("pair-silencing block of size " + std::to_string(kappa) +
                         " exceeds tl+rl+1");
    Subnet sn;
    sn.tx = sn.rx = irange(a, b, p.K);
    sn.reduced = kappa < s + 1;
    if (sn.reduced) {
      const int tl = std::max(0, kappa - 1 - p.r_left), tr = std::max(0, kappa - 1 - p.r_right);
      sn.reduced_params = {tl, tr, kappa - 1 - tl, kappa - 1 - tr};
    }
    plan.subnets.push_back(sn);
    plan.groups.push_back(sym_block(p, alpha, a, kappa, claim_full));
  }
  finish(plan);
  return plan;
}

namespace {

// Case 4 pattern: floor(K/(s+1)) silenced pairs; block sizes rebalanced when a block of the
// periodic pattern would be singular.
std::vector<int> case4_pattern(int K, int s, const Alpha& alpha) {
  const int g = K / (s + 1);
  std::vector<int> periodic;
  for (int j = 1; j <= g; ++j) periodic.push_back(j * (s + 1));
  auto ok = [&](int b) { return b == 0 || !u_is_zero(b, alpha); };
  const int tail = K - g * (s + 1);
  if (ok(s) && ok(tail)) return periodic;

  // sizes b_0..b_g with sum K-g, each in [0,s] and nonsingular; lexicographically largest.
  const int total = K - g;
  std::vector<std::vector<signed char>> feasible(g + 2, std::vector<signed char>(total + 1, -1));
  std::function<bool(int, int)> can = [&](int i, int rem) -> bool {
    if (i == g + 1) return rem == 0;
    auto& f = feasible[i][rem];
    if (f >= 0) return f;
    bool r = false;
    for (int b = std::min(s, rem); b >= 0 && !r; --b)
      if (ok(b)) r = can(i + 1, rem - b);
    f = r;
    return r;
  };
  if (!can(0, total)) return periodic;
  std::vector<int> sil;
  int pos = 0, rem = total;
  for (int i = 0; i <= g; ++i) {
    for (int b = std::min(s, rem); b >= 0; --b) {
      if (ok(b) && can(i + 1, rem - b)) {
        pos += b;
        rem -= b;
        break;
      }
    }
    if (i < g) sil.push_back(++pos);
  }
  return sil;
}

}  // namespace

TransmissionPlan sym_symmetric_si_plan(const NetworkParams& p, const Alpha& alpha) {
  p.validate();
  if (!symmetric_si(p))
    throw InvalidInput("requires symmetric side-information (tl + rl == tr + rr)");
  if (alpha.value == 0) throw InvalidInput("nonzero cross-gain required");
  const int K = p.K, s = p.t_left + p.r_left;
  if (K <= s + 1) return sym_pair_silencing_plan(p, alpha, {}, "SymTheorem3Case1");
  if (!u_is_zero(s + 1, alpha)) {
    const int gt = K / (s + 2), kt = K % (s + 2);
    const bool us_zero = u_is_zero(s, alpha);
    const std::string fam = us_zero ? "SymTheorem3Case2" : "SymTheorem3Case3";
    std::vector<int> sil;
    for (int g = 1; g <= gt; ++g) sil.push_back(g * (s + 2));
    if (kt != 0 && !us_zero && u_is_zero(kt, alpha)) sil.back() = gt * (s + 2) - 1;
    return sym_pair_silencing_plan(p, alpha, sil, fam);
  }
  return sym_pair_silencing_plan(p, alpha, case4_pattern(K, s, alpha), "SymTheorem3Case4");
}

TransmissionPlan sym_general_plan(const NetworkParams& p, const std::string& label) {
  p.validate();
  if (label == "LB1") return lb1_plan(p);
  if (label == "LB2") {
    if (p.t_left + p.r_left == 0) throw NotApplicable("LB2 needs tl+rl >= 1");
    return lb2_plan(p, "SymPropLB2");
  }
  if (label == "LB3") {
    if (p.t_right + p.r_right == 0) throw NotApplicable("LB3 needs tr+rr >= 1");
    TransmissionPlan m = lb2_plan(p.mirrored(), "SymPropLB3");
    return reflect(m, p);
  }
  if (label == "LB4") return lb4_plan(p);
  throw InvalidInput("unknown lower bound: " + label);
}

CertReport certify_plan(const TransmissionPlan& plan, const ChannelModel& model) {
  CertReport rep;
  const NetworkParams& p = plan.params;
  const int K = model.K();
  auto fail = [&](const std::string& check, const std::string& why) {
    rep.pass = false;
    rep.certified_dof = 0;
    rep.failed_check = check;
    rep.detail = why;
    return rep;
  };
  if (p.K != K) return fail("plan", "plan and model have different K");
  if (plan.topology != model.topology) return fail("plan", "plan and model topologies differ");

  // role: 0 idle, s+1 for stream s, -(g+1) for group g
  std::vector<int> role(K + 1, 0);
  std::vector<char> silent(K + 1, 0);
  for (int k : plan.silenced) {
    if (k < 1 || k > K) return fail("plan", "silenced index out of range");
    silent[k] = 1;
  }
  std::map<int, int> carried_by;
  auto claim = [&](int tx, int who) -> bool {
    if (tx < 1 || tx > K || silent[tx] || role[tx] != 0) return false;
    role[tx] = who;
    return true;
  };
  for (size_t i = 0; i < plan.streams.size(); ++i) {
    const Stream& s = plan.streams[i];
    if (!claim(s.carrier, static_cast<int>(i) + 1))
      return fail("b", "transmitter " + std::to_string(s.carrier) +
                           " is silenced, shared or out of range");
    if (s.msg < 1 || s.msg > K || carried_by.count(s.msg))
      return fail("plan", "message " + std::to_string(s.msg) + " carried twice or out of range");
    carried_by[s.msg] = static_cast<int>(i);
  }
  for (size_t g = 0; g < plan.groups.size(); ++g)
    for (int t : plan.groups[g].tx)
      if (!claim(t, -static_cast<int>(g) - 1))
        return fail("b", "group transmitter " + std::to_string(t) +
                             " is silenced, shared or out of range");
  auto transmits = [&](int t) { return t >= 1 && t <= K && role[t] != 0; };

  // messages each transmitted signal depends on
  std::vector<std::set<int>> dep(K + 1);
  std::vector<int> state(K + 1, 0);
  std::function<bool(int)> build = [&](int t) -> bool {
    if (state[t] == 2) return true;
    if (state[t] == 1) return false;
    state[t] = 1;
    if (role[t] > 0) {
      const Stream& s = plan.streams[role[t] - 1];
      dep[t].insert(s.msg);
      for (int d : s.dpc) {
        if (!transmits(d)) continue;
        if (!build(d)) return false;
        dep[t].insert(dep[d].begin(), dep[d].end());
      }
    } else if (role[t] < 0) {
      for (const auto& m : plan.groups[-role[t] - 1].messages)
        if (contains(m.tx, t)) dep[t].insert(m.msg);
    }
    state[t] = 2;
    return true;
  };
  for (int t = 1; t <= K; ++t) {
    if (!transmits(t)) continue;
    if (!build(t)) return fail("b", "cyclic dirty-paper dependency at transmitter " + std::to_string(t));
    for (int m : dep[t])
      if (!p.tx_knows(t, m))
        return fail("b", "transmitter " + std::to_string(t) + " needs message " +
                             std::to_string(m) + " outside its window");
  }
  for (const auto& s : plan.streams) {
    if (s.antenna < 1 || s.antenna > K || !p.rx_sees(s.msg, s.antenna))
      return fail("b", "receiver " + std::to_string(s.msg) + " cannot use antenna " +
                           std::to_string(s.antenna));
    for (int a : s.joint)
      if (a < 1 || a > K || !p.rx_sees(s.msg, a))
        return fail("b", "receiver " + std::to_string(s.msg) + " cannot use antenna " +
                             std::to_string(a));
  }
  for (const auto& g : plan.groups)
    for (const auto& m : g.messages) {
      for (int a : m.ants)
        if (!contains(g.ants, a) || !p.rx_sees(m.msg, a))
          return fail("b", "receiver " + std::to_string(m.msg) + " cannot use antenna " +
                               std::to_string(a));
      for (int t : m.tx)
        if (!contains(g.tx, t))
          return fail("b", "message " + std::to_string(m.msg) + " sent outside its group");
    }

  // (a) subnets do not interfere with each other
  for (size_t i = 0; i < plan.subnets.size(); ++i)
    for (size_t j = 0; j < plan.subnets.size(); ++j) {
      if (i == j) continue;
      for (int r : plan.subnets[i].rx)
        for (int t : plan.subnets[j].tx)
          if (transmits(t) && std::abs(model.h(r, t)) > kZero)
            return fail("a", "transmitter " + std::to_string(t) + " leaks into receiver " +
                                 std::to_string(r) + " of another subnet");
    }

  // (c) decodability
  std::map<std::pair<int, int>, int> memo;  // (receiver, stream) -> 1 busy, 2 ok, 3 no
  std::string why;
  std::function<bool(int, int)> decodes = [&](int r, int si) -> bool {
    auto key = std::make_pair(r, si);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second == 2;
    memo[key] = 1;
    const Stream& s = plan.streams[si];
    bool ok = true;
    if (!s.joint.empty()) {
      for (int a : s.joint) ok = ok && p.rx_sees(r, a);
      std::vector<int> T;
      for (int t = 1; t <= K; ++t) {
        if (!transmits(t)) continue;
        for (int a : s.joint)
          if (std::abs(model.h(a, t)) > kZero) { T.push_back(t); break; }
      }
      if (ok) {
        std::vector<int> rest;
        for (int t : T)
          if (t != s.carrier) rest.push_back(t);
        const int full = numeric_rank(submatrix(model, s.joint, T));
        const int without = numeric_rank(submatrix(model, s.joint, rest));
        if (full <= without) {
          ok = false;
          if (why.empty())
            why = "zero-forcing on antennas " + join(s.joint) + " cannot isolate transmitter " +
                  std::to_string(s.carrier);
        }
      }
    } else {
      const int a = s.antenna;
      if (!p.rx_sees(r, a)) ok = false;
      if (ok && std::abs(model.h(a, s.carrier)) <= kZero) {
        ok = false;
        if (why.empty())
          why = "zero pivot for transmitter " + std::to_string(s.carrier) + " at antenna " +
                std::to_string(a);
      }
      for (int j = 1; ok && j <= K; ++j) {
        if (j == s.carrier || !transmits(j) || std::abs(model.h(a, j)) <= kZero) continue;
        if (contains(s.dpc, j)) continue;
        if (role[j] < 0) { ok = false; break; }
        for (int q : dep[j]) {
          auto c = carried_by.find(q);
          if (c == carried_by.end() || !decodes(r, c->second)) { ok = false; break; }
        }
        if (!ok && why.empty())
          why = "receiver " + std::to_string(r) + " cannot remove transmitter " +
                std::to_string(j) + " at antenna " + std::to_string(a);
      }
    }
    memo[key] = ok ? 2 : 3;
    return ok;
  };
  for (size_t i = 0; i < plan.streams.size(); ++i)
    if (!decodes(plan.streams[i].msg, static_cast<int>(i)))
      return fail("c", why.empty() ? "message " + std::to_string(plan.streams[i].msg) +
                                         " is not decodable"
                                   : why);

  for (const auto& g : plan.groups) {
    for (int a : g.ants)
      for (int t = 1; t <= K; ++t)
        if (transmits(t) && !contains(g.tx, t) && std::abs(model.h(a, t)) > kZero)
          return fail("c", "transmitter " + std::to_string(t) + " leaks into group antenna " +
                               std::to_string(a));
    std::vector<LocalMsg> lm;
    for (const auto& m : g.messages) lm.push_back({m.tx, m.ants, m.prelog});
    if (!polymatroid_ok(model.H, lm))
      return fail("c", "subnet " + join(g.tx) + " prelogs exceed the rank of its channel");
  }

  // (d) claimed total
  int total = static_cast<int>(plan.streams.size());
  for (const auto& g : plan.groups)
    for (const auto& m : g.messages) total += m.prelog;
  if (total != plan.claimed_dof)
    return fail("d", "prelogs sum to " + std::to_string(total) + " but the plan claims " +
                         std::to_string(plan.claimed_dof));
  rep.pass = true;
  rep.certified_dof = total;
  return rep;
}

nlohmann::json to_json(const TransmissionPlan& plan) {
  using nlohmann::json;
  json subnets = json::array();
  for (const auto& s : plan.subnets) {
    json e = {{"tx", s.tx}, {"rx", s.rx}, {"kind", s.reduced ? "Reduced" : "Generic"}};
    if (s.reduced) e["reduced_params"] = s.reduced_params;
    subnets.push_back(e);
  }
  json strategies = json::object(), prelog = json::object();
  for (auto [m, t] : plan.strategies()) strategies[std::to_string(m)] = to_string(t);
  for (auto [m, d] : plan.prelogs()) prelog[std::to_string(m)] = d;
  json streams = json::array();
  for (const auto& s : plan.streams) {
    json e = {{"msg", s.msg}, {"carrier", s.carrier}, {"antenna", s.antenna},
              {"dpc", s.dpc}, {"tag", to_string(s.tag)}};
    if (!s.joint.empty()) e["joint"] = s.joint;
    streams.push_back(e);
  }
  json mimo = json::array();
  for (const auto& g : plan.groups) {
    json msgs = json::array();
    for (const auto& m : g.messages)
      msgs.push_back({{"msg", m.msg}, {"tx", m.tx}, {"ants", m.ants}, {"prelog", m.prelog}});
    mimo.push_back({{"tag", to_string(g.tag)}, {"tx", g.tx}, {"ants", g.ants}, {"messages", msgs}});
  }
  json inst = to_json(plan.params);
  inst["topology"] = to_string(plan.topology);
  return {{"silenced", plan.silenced}, {"subnets", subnets},  {"strategies", strategies},
          {"claimed_dof", plan.claimed_dof}, {"family", plan.family}, {"streams", streams},
          {"mimo", mimo}, {"prelog", prelog}, {"instance", inst}};
}

TransmissionPlan plan_from_json(const nlohmann::json& j) {
  TransmissionPlan plan;
  try {
    plan.params = params_from_json(j.at("instance"));
    plan.topology = topology_from_string(j.at("instance").value("topology", "symmetric"));
    plan.family = j.value("family", "");
    plan.silenced = j.value("silenced", std::vector<int>{});
    for (const auto& e : j.value("subnets", nlohmann::json::array())) {
      Subnet s;
      s.tx = e.at("tx").get<std::vector<int>>();
      s.rx = e.at("rx").get<std::vector<int>>();
      s.reduced = e.value("kind", "Generic") == "Reduced";
      if (e.contains("reduced_params")) s.reduced_params = e["reduced_params"].get<std::array<int, 4>>();
      plan.subnets.push_back(s);
    }
    for (const auto& e : j.value("streams", nlohmann::json::array())) {
      Stream s;
      s.msg = e.at("msg");
      s.carrier = e.at("carrier");
      s.antenna = e.at("antenna");
      s.dpc = e.value("dpc", std::vector<int>{});
      s.joint = e.value("joint", std::vector<int>{});
      s.tag = tag_from_string(e.at("tag"));
      plan.streams.push_back(s);
    }
    for (const auto& e : j.value("mimo", nlohmann::json::array())) {
      MimoGroup g;
      g.tag = tag_from_string(e.at("tag"));
      g.tx = e.at("tx").get<std::vector<int>>();
      g.ants = e.at("ants").get<std::vector<int>>();
      for (const auto& m : e.at("messages"))
        g.messages.push_back({m.at("msg"), m.at("tx").get<std::vector<int>>(),
                              m.at("ants").get<std::vector<int>>(), m.at("prelog")});
      plan.groups.push_back(g);
    }
    plan.claimed_dof = j.at("claimed_dof");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad plan: ") + e.what());
  }
  return plan;
}

nlohmann::json to_json(const CertReport& r) {
  nlohmann::json j = {{"pass", r.pass}, {"certified_dof", r.certified_dof}};
  if (!r.pass) {
    j["failed_check"] = r.failed_check;
    j["detail"] = r.detail;
  }
  return j;
}

}  // namespace wyner
