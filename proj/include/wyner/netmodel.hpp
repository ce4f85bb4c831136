// Network instances for the Wyner-type linear interference models.
// Indices are 1-based everywhere a user can see them; Eigen storage is 0-based.
#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wyner {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NetworkParams {
  int K = 1;
  int t_left = 0, t_right = 0;
  int r_left = 0, r_right = 0;
  double power = 1.0;

  void validate() const;
  int sigma() const { return t_left + t_right + r_left + r_right; }
  // Transmitter k may use messages [k - t_left, k + t_right].
  bool tx_knows(int tx, int msg) const { return msg >= tx - t_left && msg <= tx + t_right; }
  // Receiver k may use antennas [k - r_left, k + r_right].
  bool rx_sees(int rx, int antenna) const {
    return antenna >= rx - r_left && antenna <= rx + r_right;
  }
  // Left/right exchanged; the symmetric equal-gain model is invariant under k -> K+1-k.
  NetworkParams mirrored() const;
  bool operator==(const NetworkParams&) const = default;
};

enum class Topology { Asymmetric, Symmetric };

const char* to_string(Topology t);
Topology topology_from_string(const std::string& s);

struct CrossGainAssignment {
  enum class Kind { EqualAlpha, Explicit, RandomContinuous };
  Kind kind = Kind::EqualAlpha;
  double alpha = 0.5;               // EqualAlpha
  std::vector<double> left;         // alpha_{k,l}; asymmetric uses only this (alpha_k)
  std::vector<double> right;        // alpha_{k,r}; symmetric only
  std::uint64_t seed = 0;           // RandomContinuous provenance
  std::string label;                // optional textual provenance of alpha, e.g. "root:3:1"

  static CrossGainAssignment equal(double a, std::string label = {});
};

struct ChannelModel {
  NetworkParams params;
  Topology topology = Topology::Symmetric;
  CrossGainAssignment gains;
  Matrix H;  // K x K

  int K() const { return params.K; }
  // 1-based entry, zero outside [1,K].
  double h(int rx, int tx) const;
  bool equal_gains() const { return gains.kind == CrossGainAssignment::Kind::EqualAlpha; }
};

ChannelModel build_channel(const NetworkParams& params, Topology topology,
                           const CrossGainAssignment& gains);

// Rows/columns in the given (1-based) order.
Matrix submatrix(const ChannelModel& model, const std::vector<int>& rx,
                 const std::vector<int>& tx);

// Uniform on [-2,-0.1] U [0.1,2], reproducible from the seed.
CrossGainAssignment sample_generic_gains(int K, Topology topology, std::uint64_t seed);

// Dense H_p(alpha): unit diagonal, alpha on both off-diagonals.
Matrix H_p(int p, double alpha);

nlohmann::json to_json(const NetworkParams& p);
nlohmann::json to_json(const ChannelModel& m);
NetworkParams params_from_json(const nlohmann::json& j);
ChannelModel model_from_json(const nlohmann::json& j);

// Contiguous index range [a,b] clipped to [1,K].
std::vector<int> irange(int a, int b, int K);

}  // namespace wyner
