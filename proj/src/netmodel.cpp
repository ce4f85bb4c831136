#include "wyner/netmodel.hpp"

#include <random>

namespace wyner {

void NetworkParams::validate() const {
  if (K < 1) throw InvalidInput("K must be at least 1");
  if (t_left < 0 || t_right < 0 || r_left < 0 || r_right < 0)
    throw InvalidInput("side-information parameters must be nonnegative");
  if (!(power > 0)) throw InvalidInput("power must be positive");
}

NetworkParams NetworkParams::mirrored() const {
  NetworkParams m = *this;
  std::swap(m.t_left, m.t_right);
  std::swap(m.r_left, m.r_right);
  return m;
}

const char* to_string(Topology t) {
  return t == Topology::Asymmetric ? "asymmetric" : "symmetric";
}

Topology topology_from_string(const std::string& s) {
  if (s == "asym" || s == "asymmetric") return Topology::Asymmetric;
  if (s == "sym" || s == "symmetric") return Topology::Symmetric;
  throw InvalidInput("unknown topology '" + s + "'");
}

CrossGainAssignment CrossGainAssignment::equal(double a, std::string label) {
  CrossGainAssignment g;
  g.kind = Kind::EqualAlpha;
  g.alpha = a;
  g.label = std::move(label);
  return g;
}

double ChannelModel::h(int rx, int tx) const {
  if (rx < 1 || rx > K() || tx < 1 || tx > K()) return 0.0;
  return H(rx - 1, tx - 1);
}

ChannelModel build_channel(const NetworkParams& params, Topology topology,
                           const CrossGainAssignment& gains) {
  params.validate();
  const int K = params.K;
  std::vector<double> left, right;
  switch (gains.kind) {
    case CrossGainAssignment::Kind::EqualAlpha:
      if (gains.alpha == 0.0) throw InvalidInput("nonzero cross-gain required");
      left.assign(K, gains.alpha);
      right.assign(K, gains.alpha);
      break;
    case CrossGainAssignment::Kind::Explicit:
    case CrossGainAssignment::Kind::RandomContinuous:
      left = gains.left;
      right = gains.right;
      if (static_cast<int>(left.size()) != K)
        throw InvalidInput("expected " + std::to_string(K) + " left gains");
      if (topology == Topology::Symmetric && static_cast<int>(right.size()) != K)
        throw InvalidInput("expected " + std::to_string(K) + " right gains");
      if (topology == Topology::Asymmetric && !right.empty())
        throw InvalidInput("asymmetric model takes no right gains");
      for (double g : left)
        if (g == 0.0) throw InvalidInput("nonzero cross-gain required");
      for (double g : right)
        if (g == 0.0) throw InvalidInput("nonzero cross-gain required");
      break;
  }

  ChannelModel m;
  m.params = params;
  m.topology = topology;
  m.gains = gains;
  m.H = Matrix::Identity(K, K);
  for (int j = 2; j <= K; ++j) m.H(j - 1, j - 2) = left[j - 1];
  if (topology == Topology::Symmetric)
    for (int j = 1; j < K; ++j) m.H(j - 1, j) = right[j - 1];
  return m;
}

Matrix submatrix(const ChannelModel& model, const std::vector<int>& rx,
                 const std::vector<int>& tx) {
  Matrix S(rx.size(), tx.size());
  for (size_t i = 0; i < rx.size(); ++i) {
    if (rx[i] < 1 || rx[i] > model.K()) throw InvalidInput("receive index out of range");
    for (size_t j = 0; j < tx.size(); ++j) {
      if (tx[j] < 1 || tx[j] > model.K()) throw InvalidInput("transmit index out of range");
      S(i, j) = model.H(rx[i] - 1, tx[j] - 1);
    }
  }
  if (rx.empty())
    for (int t : tx)
      if (t < 1 || t > model.K()) throw InvalidInput("transmit index out of range");
  return S;
}

CrossGainAssignment sample_generic_gains(int K, Topology topology, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::bernoulli_distribution neg(0.5);
  auto draw = [&] { double v = mag(rng); return neg(rng) ? -v : v; };

  CrossGainAssignment g;
  g.kind = CrossGainAssignment::Kind::RandomContinuous;
  g.seed = seed;
  g.left.resize(K);
  for (auto& v : g.left) v = draw();
  if (topology == Topology::Symmetric) {
    g.right.resize(K);
    for (auto& v : g.right) v = draw();
  }
  return g;
}

Matrix H_p(int p, double alpha) {
  Matrix H = Matrix::Identity(p, p);
  for (int i = 0; i + 1 < p; ++i) H(i, i + 1) = H(i + 1, i) = alpha;
  return H;
}

nlohmann::json to_json(const NetworkParams& p) {
  return {{"K", p.K},           {"t_left", p.t_left},   {"t_right", p.t_right},
          {"r_left", p.r_left}, {"r_right", p.r_right}, {"power", p.power}};
}

nlohmann::json to_json(const ChannelModel& m) {
  nlohmann::json j = to_json(m.params);
  j["topology"] = to_string(m.topology);
  nlohmann::json g;
  switch (m.gains.kind) {
    case CrossGainAssignment::Kind::EqualAlpha:
      g = {{"kind", "equal"}, {"alpha", m.gains.alpha}};
      if (!m.gains.label.empty()) g["label"] = m.gains.label;
      break;
    case CrossGainAssignment::Kind::Explicit:
      g = {{"kind", "explicit"}, {"left", m.gains.left}};
      if (!m.gains.right.empty()) g["right"] = m.gains.right;
      break;
    case CrossGainAssignment::Kind::RandomContinuous:
      g = {{"kind", "random"}, {"seed", m.gains.seed}};
      break;
  }
  j["gains"] = g;
  return j;
}

NetworkParams params_from_json(const nlohmann::json& j) {
  NetworkParams p;
  try {
    p.K = j.at("K").get<int>();
    p.t_left = j.value("t_left", 0);
    p.t_right = j.value("t_right", 0);
    p.r_left = j.value("r_left", 0);
    p.r_right = j.value("r_right", 0);
    p.power = j.value("power", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad instance: ") + e.what());
  }
  p.validate();
  return p;
}

ChannelModel model_from_json(const nlohmann::json& j) {
  NetworkParams p = params_from_json(j);
  Topology topo = topology_from_string(j.value("topology", std::string("symmetric")));
  CrossGainAssignment g;
  try {
    const auto& gj = j.at("gains");
    std::string kind = gj.at("kind").get<std::string>();
    if (kind == "equal") {
      if (!gj.at("alpha").is_number())
        throw InvalidInput("gains.alpha must be numeric here; resolve tokens first");
      g = CrossGainAssignment::equal(gj.at("alpha").get<double>(), gj.value("label", ""));
    } else if (kind == "explicit") {
      g.kind = CrossGainAssignment::Kind::Explicit;
      g.left = gj.at("left").get<std::vector<double>>();
      if (gj.contains("right")) g.right = gj.at("right").get<std::vector<double>>();
    } else if (kind == "random") {
      g = sample_generic_gains(p.K, topo, gj.at("seed").get<std::uint64_t>());
    } else {
      throw InvalidInput("unknown gains kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad gains: ") + e.what());
  }
  return build_channel(p, topo, g);
}

std::vector<int> irange(int a, int b, int K) {
  std::vector<int> v;
  for (int i = std::max(a, 1); i <= std::min(b, K); ++i) v.push_back(i);
  return v;
}

}  // namespace wyner
