#include "wyner/converse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace wyner {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kEigTol = 1e-18;  // sigma_min above 1e-9, far from roundoff

using IndexSet = std::set<int>;

std::vector<int> to_vec(const IndexSet& s) { return {s.begin(), s.end()}; }

IndexSet window_union(const NetworkParams& p, const IndexSet& rx) {
  IndexSet out;
  for (int k : rx)
    for (int a = std::max(1, k - p.r_left); a <= std::min(p.K, k + p.r_right); ++a) out.insert(a);
  return out;
}

// Linear forms over (X_1..X_K, N_1..N_K).
Vector y_form(const ChannelModel& m, int k) {
  const int K = m.K();
  Vector v = Vector::Zero(2 * K);
  v.head(K) = m.H.row(k - 1).transpose();
  v(K + k - 1) = 1;
  return v;
}

Vector genie_form(const GenieSignal& g, int K) {
  Vector v = Vector::Zero(2 * K);
  for (auto [k, c] : g.noise)
    if (k >= 1 && k <= K) v(K + k - 1) += c;
  for (auto [j, c] : g.input)
    if (j >= 1 && j <= K) v(j - 1) += c;
  return v;
}

std::vector<int> computable_inputs(const NetworkParams& p, const IndexSet& A,
                                   const EncoderDependency& deps) {
  std::vector<int> out;
  for (int j = 1; j <= p.K; ++j) {
    bool ok = true;
    if (!deps.empty()) {
      auto it = deps.find(j);
      if (it != deps.end())
        for (int m : it->second) ok = ok && A.count(m);
    } else {
      for (int m = std::max(1, j - p.t_left); m <= std::min(p.K, j + p.t_right); ++m)
        ok = ok && A.count(m);
    }
    if (ok) out.push_back(j);
  }
  return out;
}

GenieSignal noise_genie(const std::map<int, double>& c, int K) {
  GenieSignal g;
  for (auto [k, v] : c)
    if (k >= 1 && k <= K && v != 0) g.noise[k] += v;
  return g;
}

// Noise-only genie letting A (knowing `known` outputs) rebuild Y_t: it cancels every
// non-computable input with a combination of the known outputs.
std::pair<GenieSignal, double> synth_genie(const ChannelModel& m, const NetworkParams& p,
                                           const IndexSet& A, const IndexSet& known, int t) {
  const int K = m.K();
  const auto xs = computable_inputs(p, A, {});
  IndexSet comp(xs.begin(), xs.end());
  std::vector<int> nc;
  for (int j = 1; j <= K; ++j)
    if (!comp.count(j)) nc.push_back(j);
  std::map<int, double> c{{t, 1.0}};
  if (nc.empty()) return {noise_genie(c, K), 0.0};
  const std::vector<int> R = to_vec(known);
  const Matrix Hk = submatrix(m, R, nc);
  const Vector ht = submatrix(m, {t}, nc).row(0).transpose();
  double residual;
  if (R.empty()) {
    residual = ht.cwiseAbs().maxCoeff();
  } else {
    Vector x = Hk.transpose().completeOrthogonalDecomposition().solve(ht);
    residual = (Hk.transpose() * x - ht).cwiseAbs().maxCoeff();
    for (size_t i = 0; i < R.size(); ++i)
      if (std::abs(x(i)) > 1e-13) c[R[i]] -= x(i);
  }
  return {noise_genie(c, K), residual};
}

// Smallest eigenvalue of Cov(N_RA | genie noises) for iid unit noises: sigma_min(E Z)^2 with Z an
// orthonormal basis of the complement of the genies' noise span and E selecting R_A.
double min_conditional_eigenvalue(const std::vector<int>& RA, const std::vector<GenieSignal>& gs,
                                  int K) {
  if (RA.empty()) return 1.0;
  Matrix G = Matrix::Zero(std::max<size_t>(gs.size(), 1), K);
  for (size_t i = 0; i < gs.size(); ++i) {
    for (auto [k, c] : gs[i].noise)
      if (k >= 1 && k <= K) G(i, k - 1) += c;
    const double n = G.row(i).norm();
    if (n > 0) G.row(i) /= n;
  }
  const Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;
  const int free = K - rank;
  if (free < static_cast<int>(RA.size())) return 0.0;
  const Matrix Z = svd.matrixV().rightCols(free);
  Matrix EZ(RA.size(), free);
  for (size_t r = 0; r < RA.size(); ++r) EZ.row(r) = Z.row(RA[r] - 1);
  const double smin = Eigen::JacobiSVD<Matrix>(EZ).singularValues().minCoeff();
  return smin * smin;
}

GeniePartition make_partition(const NetworkParams& p, Topology topo, const std::string& family,
                              const IndexSet& A) {
  GeniePartition g;
  g.params = p;
  g.topology = topo;
  g.family = family;
  g.A = to_vec(A);
  g.R_A = to_vec(window_union(p, A));
  g.bound_value = static_cast<int>(g.R_A.size());
  return g;
}

IndexSet rest_of(int K, const IndexSet& A) {
  IndexSet r;
  for (int k = 1; k <= K; ++k)
    if (!A.count(k)) r.insert(k);
  return r;
}

void add_range(IndexSet& s, int a, int b, int K) {
  for (int k = std::max(1, a); k <= std::min(K, b); ++k) s.insert(k);
}

// Genies for each round synthesized from the partition alone.
double synthesize_rounds(GeniePartition& part, const ChannelModel& m, const NetworkParams& p) {
  IndexSet Ai(part.A.begin(), part.A.end());
  IndexSet known(part.R_A.begin(), part.R_A.end());
  double worst = 0;
  part.genies.clear();
  for (const auto& B : part.B) {
    IndexSet Bs(B.begin(), B.end());
    for (int t : window_union(p, Bs)) {
      if (known.count(t)) continue;
      auto [g, r] = synth_genie(m, p, Ai, known, t);
      g.index = static_cast<int>(part.genies.size());
      part.genies.push_back(g);
      worst = std::max(worst, r);
    }
    auto R = window_union(p, Bs);
    known.insert(R.begin(), R.end());
    Ai.insert(B.begin(), B.end());
  }
  return worst;
}

GeniePartition reflected(const GeniePartition& g, const NetworkParams& orig) {
  const int K = orig.K;
  auto f = [K](int k) { return K + 1 - k; };
  GeniePartition r = g;
  r.params = orig;
  auto flip = [&](std::vector<int> v) {
    for (int& k : v) k = f(k);
    std::sort(v.begin(), v.end());
    return v;
  };
  r.A = flip(g.A);
  r.R_A = flip(g.R_A);
  for (auto& b : r.B) b = flip(b);
  for (auto& gs : r.genies) {
    std::map<int, double> n, x;
    for (auto [k, c] : gs.noise) n[f(k)] = c;
    for (auto [k, c] : gs.input) x[f(k)] = c;
    gs.noise = n;
    gs.input = x;
  }
  r.recipes.clear();
  return r;
}

bool acceptable(GeniePartition& part, const ChannelModel& m, int target) {
  if (part.bound_value != target) return false;
  if (compile_recipes(part, m) > kResidualTol) return false;
  return genie_entropy_check(part, m).ok;
}

ChannelModel equal_model(const NetworkParams& p, Topology t, double alpha) {
  NetworkParams q = p;
  return build_channel(q, t, CrossGainAssignment::equal(alpha));
}

Matrix inverse_M(int p, double alpha) {
  if (p == 1) return Matrix::Constant(1, 1, 1.0 / alpha);
  return build_M_and_inverse(p, alpha).inverse;
}

GeniePartition ub1_direct(const NetworkParams& p, double alpha, int theta) {
  const int K = p.K, b4 = p.sigma() + 4, g4 = K / b4;
  const int tl = p.t_left, tr = p.t_right, rl = p.r_left, rr = p.r_right;
  IndexSet A;
  for (int m = 0; m + 1 < g4; ++m) add_range(A, m * b4 + rl + 2, m * b4 + rl + tl + tr + 3, K);
  if (g4 > 0) {
    const int m = g4 - 1;
    if (theta == 1) {
      add_range(A, m * b4 + rl + 2, m * b4 + rl + tl + tr + 3, K);
      add_range(A, g4 * b4 + rl + 2, K, K);
    } else {
      add_range(A, m * b4 + rl + 2, K - rr - 1, K);
    }
  } else {
    add_range(A, theta == 0 ? 1 : rl + 2, K, K);
  }
  GeniePartition part = make_partition(p, Topology::Symmetric, "ub1", A);
  part.construction = "direct";
  auto rest = rest_of(K, A);
  if (!rest.empty()) part.B.push_back(to_vec(rest));

  const int pa = tl + rl + 1, pb = tr + rr + 1;
  const Matrix a = inverse_M(pa, alpha), b = inverse_M(pb, alpha);
  IndexSet RA(part.R_A.begin(), part.R_A.end());
  for (int c0 = 1; c0 <= K; ++c0) {
    if (RA.count(c0)) continue;
    std::map<int, double> c{{c0, -1.0}};
    if ((c0 - 1) % b4 == 0) {
      for (int j = 1; j <= pb; ++j) c[c0 - 1 - j] += alpha * b(0, j - 1);
      for (int j = 1; j <= pa; ++j) c[c0 + j] += a(0, j - 1) + (pa > 1 ? alpha * a(1, j - 1) : 0);
    } else {
      for (int j = 1; j <= pb; ++j) c[c0 - j] += b(0, j - 1) + (pb > 1 ? alpha * b(1, j - 1) : 0);
      for (int j = 1; j <= pa; ++j) c[c0 + 1 + j] += alpha * a(0, j - 1);
    }
    GenieSignal g = noise_genie(c, K);
    g.index = static_cast<int>(part.genies.size());
    part.genies.push_back(g);
  }
  return part;
}

GeniePartition ub2_direct(const NetworkParams& p, int theta) {
  const int K = p.K, b5 = p.sigma() + 3, g5 = K / b5;
  const int tl = p.t_left, tr = p.t_right, rl = p.r_left, rr = p.r_right;
  const int last = theta ? K - rr - 1 : K;
  IndexSet A;
  if (g5 >= 1) {
    add_range(A, 1, tr + 1, K);
    for (int m = 1; m < g5; ++m) add_range(A, m * b5 - tl + 1, m * b5 + tr + 1, K);
    add_range(A, g5 * b5 - tl + 1, last, K);
  } else {
    add_range(A, 1, last, K);
  }
  GeniePartition part = make_partition(p, Topology::Symmetric, "ub2", A);
  part.construction = "direct";
  IndexSet used = A;
  for (int m = 0; m < g5; ++m) {
    const int pp = m * b5 + tr + rr + 2;
    IndexSet rest;
    for (int k = std::max(1, pp - rr); k <= std::min(K, pp + rl + 1); ++k)
      if (!used.count(k)) rest.insert(k);
    std::vector<int> first, second;
    for (int k : rest) (k == pp + rl + 1 ? first : second).push_back(k);
    for (auto* v : {&first, &second})
      if (!v->empty()) {
        part.B.push_back(*v);
        used.insert(v->begin(), v->end());
      }
  }
  auto left = rest_of(K, used);
  if (!left.empty()) part.B.push_back(to_vec(left));
  return part;
}

// Pairs of silenced antennas at a chosen offset, then single-message rounds in any order
// that keeps every synthesized genie exact and the noise condition intact.
std::optional<GeniePartition> ub2_search(const NetworkParams& p, double alpha, int theta,
                                         int target) {
  const int K = p.K;
  for (int mirror = 0; mirror <= 1; ++mirror) {
    const NetworkParams q = mirror ? p.mirrored() : p;
    const ChannelModel mq = equal_model(q, Topology::Symmetric, alpha);
    const int b5 = q.sigma() + 3, g5 = K / b5;
    for (int c = 0; c < b5; ++c) {
      IndexSet P;
      for (int m = -1; m <= g5 + 1; ++m)
        for (int x : {m * b5 + c, m * b5 + c + 1})
          if (x >= 1 && x <= K) P.insert(x);
      if (theta) P.insert(K);
      if (static_cast<int>(P.size()) != 2 * g5 + theta) continue;
      IndexSet A;
      for (int k = 1; k <= K; ++k) {
        bool hit = false;
        for (int x : P) hit = hit || q.rx_sees(k, x);
        if (!hit) A.insert(k);
      }
      GeniePartition part = make_partition(q, Topology::Symmetric, "ub2", A);
      if (part.bound_value != target) continue;

      IndexSet Ai = A, known(part.R_A.begin(), part.R_A.end());
      auto rem = to_vec(rest_of(K, A));
      bool stuck = false;
      while (!rem.empty() && !stuck) {
        stuck = true;
        for (size_t i = 0; i < rem.size(); ++i) {
          const int k = rem[i];
          std::vector<GenieSignal> add;
          bool ok = true;
          for (int t : window_union(q, {k})) {
            if (known.count(t)) continue;
            auto [g, r] = synth_genie(mq, q, Ai, known, t);
            if (r > kResidualTol) { ok = false; break; }
            add.push_back(g);
          }
          if (!ok) continue;
          auto trial = part.genies;
          trial.insert(trial.end(), add.begin(), add.end());
          if (min_conditional_eigenvalue(part.R_A, trial, K) < 1e-9) continue;
          part.genies = trial;
          auto R = window_union(q, {k});
          known.insert(R.begin(), R.end());
          Ai.insert(k);
          part.B.push_back({k});
          rem.erase(rem.begin() + i);
          stuck = false;
          break;
        }
      }
      if (stuck) continue;
      for (size_t i = 0; i < part.genies.size(); ++i) part.genies[i].index = static_cast<int>(i);
      part.construction = "search";
      if (mirror) part = reflected(part, p);
      part.params = p;
      return part;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<int> reachable(const NetworkParams& p, const std::vector<int>& receivers) {
  return to_vec(window_union(p, IndexSet(receivers.begin(), receivers.end())));
}

GeniePartition build_asym_genie(const NetworkParams& p, double alpha) {
  p.validate();
  if (alpha == 0) throw InvalidInput("nonzero cross-gain required");
  const int K = p.K, beta = p.sigma() + 2;
  const int gamma = ceil_pos(K - p.t_left - p.r_left - 1, beta);
  IndexSet A;
  if (gamma == 0) {
    add_range(A, 1, K, K);
    GeniePartition part = make_partition(p, Topology::Asymmetric, "asym", A);
    part.construction = "trivial";
    return part;
  }
  const int g = gamma - 1;
  for (int m = 0; m < g; ++m) add_range(A, m * beta + p.r_left + 2, (m + 1) * beta - p.r_right, K);
  add_range(A, g * beta + p.r_left + 2, K, K);
  GeniePartition part = make_partition(p, Topology::Asymmetric, "asym", A);
  part.construction = "direct";
  auto rest = rest_of(K, A);
  if (!rest.empty()) part.B.push_back(to_vec(rest));
  for (int m = 0; m <= g; ++m) {
    const int base = 1 + m * beta;
    std::map<int, double> c{{base, 1.0}};
    for (int nu = 1; nu <= p.r_left + p.t_left + 1; ++nu) c[base + nu] += std::pow(-1.0 / alpha, nu);
    if (m >= 1)
      for (int nu = 1; nu <= p.t_right + p.r_right; ++nu) c[base - nu] += std::pow(-alpha, nu);
    GenieSignal gs = noise_genie(c, K);
    gs.index = m;
    part.genies.push_back(gs);
  }
  return part;
}

GeniePartition build_sym_genie_ub1(const NetworkParams& p, double alpha, const BoundOptions& opt) {
  p.validate();
  if (alpha == 0) throw InvalidInput("nonzero cross-gain required");
  const BoundAux aux = bound_aux(p, opt);
  const int theta = aux.th[4], target = p.K - 2 * aux.g[4] - theta;
  const ChannelModel m = equal_model(p, Topology::Symmetric, alpha);

  GeniePartition direct = ub1_direct(p, alpha, theta);
  if (acceptable(direct, m, target)) return direct;
  GeniePartition synth = direct;
  synth.construction = "synthesized";
  synthesize_rounds(synth, m, p);
  if (acceptable(synth, m, target)) return synth;

  // Equal gains are invariant under k -> K+1-k, so the mirrored construction also applies.
  const NetworkParams q = p.mirrored();
  const ChannelModel mq = equal_model(q, Topology::Symmetric, alpha);
  GeniePartition mp = ub1_direct(q, alpha, theta);
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt == 1) synthesize_rounds(mp, mq, q);
    GeniePartition r = reflected(mp, p);
    r.construction = attempt == 0 ? "mirror" : "mirror-synthesized";
    if (acceptable(r, m, target)) return r;
  }
  direct.recipes.clear();
  return direct;
}

GeniePartition build_sym_genie_ub2(const NetworkParams& p, const Alpha& alpha,
                                   bool table_theta5) {
  p.validate();
  if (alpha.value == 0) throw InvalidInput("nonzero cross-gain required");
  const int s = p.t_left + p.r_left + 1;
  if (!u_is_zero(s, alpha)) throw NotApplicable("requires singular H_{tl+rl+1}(alpha)");
  const NullRelation nr = null_relation(s, alpha);
  if (nr.residual > kResidualTol) throw NotApplicable("null relation residual too large");

  BoundOptions opt;
  opt.theta5_proof = !table_theta5;
  const BoundAux aux = bound_aux(p, opt);
  const int theta = aux.th[5], target = p.K - 2 * aux.g[5] - theta;
  const ChannelModel m = equal_model(p, Topology::Symmetric, alpha.value);

  GeniePartition part = ub2_direct(p, theta);
  synthesize_rounds(part, m, p);
  if (acceptable(part, m, target)) return part;
  if (auto found = ub2_search(p, alpha.value, theta, target)) {
    if (acceptable(*found, m, target)) return *found;
  }
  part.recipes.clear();
  return part;
}

GeniePartition build_offset_genie(const NetworkParams& p, double alpha) {
  p.validate();
  if (alpha == 0) throw InvalidInput("nonzero cross-gain required");
  const int L = p.t_left + p.r_left;
  if (p.t_right + p.r_right != L) throw InvalidInput("offset genie needs tl+rl = tr+rr");
  if (L < 1) throw InvalidInput("offset genie needs L >= 1");
  const int K = p.K;
  if ((K + 1) % (L + 2) != 0) throw NotApplicable("K must equal q(L+2)-1");
  const int q = (K + 1) / (L + 2);
  if (q % 2 == 0) throw NotApplicable("proof covers q odd only; q even is not implemented");
  const int g = (q - 1) / 2, b = 2 * L + 4, rl = p.r_left, tr = p.t_right;
  IndexSet A;
  add_range(A, rl + 2, L + tr + 2, K);
  for (int m = 1; m < g; ++m) add_range(A, m * b + rl + 1, m * b + L + tr + 2, K);
  if (g >= 1) add_range(A, g * b + rl + 1, K, K);
  if (A.empty()) throw NotApplicable("cooperating set is empty for this split of L");
  GeniePartition part = make_partition(p, Topology::Symmetric, "offset", A);
  part.construction = "direct";
  IndexSet used = A;
  if (!used.count(rl + 1)) {
    part.B.push_back({rl + 1});
    used.insert(rl + 1);
  }
  auto rest = rest_of(K, used);
  if (!rest.empty()) part.B.push_back(to_vec(rest));

  const VSequence v = v_sequence(L + 1, alpha);
  GenieSignal v0;
  for (int j = 0; j <= L; ++j) v0.noise[j + 1] = v.v(j);
  v0.input[L + 1] = -alpha * v.v(L + 1);
  part.genies.push_back(v0);

  // Later rounds use noise-only genies synthesized for the remaining antennas.
  const ChannelModel m = equal_model(p, Topology::Symmetric, alpha);
  IndexSet Ai = A, known(part.R_A.begin(), part.R_A.end());
  for (size_t i = 0; i < part.B.size(); ++i) {
    IndexSet Bs(part.B[i].begin(), part.B[i].end());
    if (i > 0)
      for (int t : window_union(p, Bs)) {
        if (known.count(t)) continue;
        auto [gs, r] = synth_genie(m, p, Ai, known, t);
        gs.index = static_cast<int>(part.genies.size());
        part.genies.push_back(gs);
      }
    auto R = window_union(p, Bs);
    known.insert(R.begin(), R.end());
    Ai.insert(Bs.begin(), Bs.end());
  }
  part.info_term = "1/2 log(1 + P alpha^2 v_" + std::to_string(L + 1) + "^2 / |(v_0..v_" +
                   std::to_string(L) + ")|^2)";
  return part;
}

NullRelation null_relation(int p, const Alpha& alpha) {
  if (p < 2) throw InvalidInput("null relation needs p >= 2");
  const Matrix H = H_p(p, alpha.value);
  const Matrix rows = H.bottomRows(p - 1);
  const Vector h1 = H.row(0).transpose();
  const Vector d = rows.transpose().completeOrthogonalDecomposition().solve(h1);
  NullRelation nr;
  nr.d.assign(d.data(), d.data() + d.size());
  nr.residual = (rows.transpose() * d - h1).cwiseAbs().maxCoeff();
  return nr;
}

double compile_recipes(GeniePartition& part, const ChannelModel& model,
                       const EncoderDependency& deps) {
  const NetworkParams& p = part.params;
  const int K = model.K();
  if (p.K != K) throw InvalidInput("partition and model have different K");
  {
    std::vector<int> seen(K + 1, 0);
    for (int k : part.A) seen[k]++;
    for (const auto& b : part.B)
      for (int k : b) seen[k]++;
    for (int k = 1; k <= K; ++k)
      if (seen[k] != 1) throw InvalidInput("A and B_i do not partition the receivers");
  }
  part.recipes.clear();
  IndexSet Ai(part.A.begin(), part.A.end());
  IndexSet known(part.R_A.begin(), part.R_A.end());
  std::vector<Vector> gforms;
  for (const auto& g : part.genies) gforms.push_back(genie_form(g, K));
  double worst = 0;
  for (size_t i = 0; i < part.B.size(); ++i) {
    IndexSet Bs(part.B[i].begin(), part.B[i].end());
    const auto xs = computable_inputs(p, Ai, deps);
    const auto outs = to_vec(known);
    const int n = static_cast<int>(outs.size() + xs.size() + gforms.size());
    Matrix basis(2 * K, n);
    int col = 0;
    for (int k : outs) basis.col(col++) = y_form(model, k);
    for (int j : xs) {
      Vector e = Vector::Zero(2 * K);
      e(j - 1) = 1;
      basis.col(col++) = e;
    }
    for (const auto& g : gforms) basis.col(col++) = g;
    const auto RB = window_union(p, Bs);
    using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const LMatrix lbasis = basis.cast<long double>();
    std::optional<Eigen::CompleteOrthogonalDecomposition<LMatrix>> cod;
    if (n > 0) cod.emplace(lbasis);
    for (int t : RB) {
      if (known.count(t)) continue;
      const auto y = y_form(model, t).cast<long double>().eval();
      ReconstructionRecipe r;
      r.target = t;
      r.stage = static_cast<int>(i) + 1;
      r.outputs = outs;
      r.inputs = xs;
      if (n > 0) {
        r.coeffs = cod->solve(y);
        worst = std::max(worst, static_cast<double>((lbasis * r.coeffs - y).cwiseAbs().maxCoeff()));
      } else {
        r.coeffs.resize(0);
        worst = std::max(worst, static_cast<double>(y.cwiseAbs().maxCoeff()));
      }
      part.recipes.push_back(r);
    }
    known.insert(RB.begin(), RB.end());
    Ai.insert(Bs.begin(), Bs.end());
  }
  part.recipe_residual = worst;
  return worst;
}

ConverseReport verify_reconstruction(GeniePartition& part, const ChannelModel& model, int trials,
                                     double tol, std::uint64_t seed, const EncoderDependency& deps) {
  ConverseReport rep;
  rep.bound = mac_bound_value(part);
  rep.trials = trials;
  const int K = model.K();
  if (part.recipes.empty() && !part.B.empty()) compile_recipes(part, model, deps);

  // Every input a recipe touches must be computable from the messages decoded so far.
  {
    IndexSet Ai(part.A.begin(), part.A.end());
    int stage = 0;
    std::vector<int> xs;
    for (const auto& r : part.recipes) {
      while (stage < r.stage) {
        if (stage > 0) Ai.insert(part.B[stage - 1].begin(), part.B[stage - 1].end());
        ++stage;
        xs = computable_inputs(part.params, Ai, deps);
      }
      for (int j : r.inputs)
        if (!std::binary_search(xs.begin(), xs.end(), j)) {
          rep.structural_ok = false;
          rep.detail = "recipe for Y_" + std::to_string(r.target) + " uses X_" + std::to_string(j) +
                       " which is not computable at stage " + std::to_string(r.stage);
          rep.max_abs_error = std::numeric_limits<double>::infinity();
          return rep;
        }
    }
  }
  for (const auto& r : part.recipes) rep.targets.push_back(r.target);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Vector X(K), N(K);
    for (int k = 0; k < K; ++k) X(k) = gauss(rng);
    for (int k = 0; k < K; ++k) N(k) = gauss(rng);
    using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const LVector Y = model.H.cast<long double>() * X.cast<long double>() + N.cast<long double>();
    LVector V(part.genies.size());
    for (size_t g = 0; g < part.genies.size(); ++g) {
      long double s = 0;
      for (auto [k, c] : part.genies[g].noise) s += c * N(k - 1);
      for (auto [j, c] : part.genies[g].input) s += c * X(j - 1);
      V(g) = s;
    }
    std::vector<long double> have(K + 1, std::numeric_limits<long double>::quiet_NaN());
    for (int k : part.R_A) have[k] = Y(k - 1);
    for (const auto& r : part.recipes) {
      long double s = 0;
      int c = 0;
      for (int k : r.outputs) s += r.coeffs(c++) * have[k];
      for (int j : r.inputs) s += r.coeffs(c++) * X(j - 1);
      for (int g = 0; g < V.size() && c < r.coeffs.size(); ++g) s += r.coeffs(c++) * V(g);
      have[r.target] = s;
      const double err = static_cast<double>(std::abs(s - Y(r.target - 1)));
      worst = std::isnan(err) ? std::numeric_limits<double>::infinity() : std::max(worst, err);
    }
  }
  rep.max_abs_error = worst;
  const EntropyReport e = genie_entropy_check(part, model);
  rep.entropy_ok = e.ok;
  rep.min_eigenvalue = e.min_eigenvalue;
  if (worst > tol) rep.detail = "reconstruction error above tolerance";
  return rep;
}

EntropyReport genie_entropy_check(const GeniePartition& part, const ChannelModel& model) {
  EntropyReport r;
  r.min_eigenvalue = min_conditional_eigenvalue(part.R_A, part.genies, model.K());
  r.ok = r.min_eigenvalue > kEigTol;
  return r;
}

int mac_bound_value(const GeniePartition& part) { return static_cast<int>(part.R_A.size()); }

double offset_information_term(int L, double alpha, double P) {
  const VSequence v = v_sequence(L + 1, alpha);
  double norm2 = 0;
  for (int j = 0; j <= L; ++j) norm2 += v.v(j) * v.v(j);
  const double vl = v.v(L + 1);
  return 0.5 * std::log1p(P * alpha * alpha * vl * vl / norm2);
}

nlohmann::json to_json(const ConverseReport& r) {
  nlohmann::json j = {{"bound", r.bound},
                      {"targets", r.targets},
                      {"max_abs_error", r.max_abs_error},
                      {"trials", r.trials},
                      {"entropy_ok", r.entropy_ok}};
  if (!r.structural_ok) j["structural_ok"] = false;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

nlohmann::json to_json(const GeniePartition& g) {
  nlohmann::json genies = nlohmann::json::array();
  for (const auto& s : g.genies) {
    nlohmann::json n = nlohmann::json::object(), x = nlohmann::json::object();
    for (auto [k, c] : s.noise) n[std::to_string(k)] = c;
    for (auto [k, c] : s.input) x[std::to_string(k)] = c;
    nlohmann::json e = {{"index", s.index}, {"noise", n}};
    if (!s.input.empty()) e["input"] = x;
    genies.push_back(e);
  }
  nlohmann::json j = {{"family", g.family}, {"construction", g.construction},
                      {"A", g.A},           {"B", g.B},
                      {"R_A", g.R_A},       {"bound_value", g.bound_value},
                      {"genies", genies}};
  if (!g.info_term.empty()) j["info_term"] = g.info_term;
  return j;
}

}  // namespace wyner
