// Genie-aided converse constructions and the numerical checks behind them.
//
// A partition hands the receivers in A the genie signals, lets them decode their own messages,
// and then reconstructs the remaining antenna outputs round by round (B_1, B_2, ...). Every
// reconstruction is a fixed linear recipe over known outputs, computable inputs and genies.
#pragma once

#include "wyner/dofcalc.hpp"
#include "wyner/netmodel.hpp"
#include "wyner/schemes.hpp"
#include "wyner/tridiag.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wyner {

struct GenieSignal {
  int index = 0;
  std::map<int, double> noise;  // antenna -> coefficient on N_k
  std::map<int, double> input;  // transmitter -> coefficient on X_j
};

struct ReconstructionRecipe {
  int target = 0;
  int stage = 0;  // 1-based round
  std::vector<int> outputs, inputs;  // Y_k and X_j used, in coefficient order
  // outputs, then inputs, then all genies; extended precision because small alpha
  // makes the coefficients large and the sums cancel heavily
  Eigen::Matrix<long double, Eigen::Dynamic, 1> coeffs;
};

struct GeniePartition {
  std::string family;
  std::string construction;  // direct, synthesized, mirror, search
  NetworkParams params;
  Topology topology = Topology::Symmetric;
  std::vector<int> A;
  std::vector<std::vector<int>> B;
  std::vector<int> R_A;
  std::vector<GenieSignal> genies;
  std::vector<ReconstructionRecipe> recipes;
  double recipe_residual = 0;  // worst least-squares residual when recipes were compiled
  int bound_value = 0;
  std::string info_term;  // offset genie only
};

// Which messages each transmitted signal depends on; empty means "inputs free"
// (X_j may depend on any message in its cognition window).
using EncoderDependency = std::map<int, std::vector<int>>;

struct ConverseReport {
  int bound = 0;
  std::vector<int> targets;
  double max_abs_error = 0;
  int trials = 0;
  bool entropy_ok = false;
  bool structural_ok = true;
  double min_eigenvalue = 0;
  std::string detail;
};

struct EntropyReport {
  bool ok = false;
  double min_eigenvalue = 0;
};

// Receivers' reachable antennas.
std::vector<int> reachable(const NetworkParams& p, const std::vector<int>& receivers);

GeniePartition build_asym_genie(const NetworkParams& p, double alpha);
GeniePartition build_sym_genie_ub1(const NetworkParams& p, double alpha,
                                   const BoundOptions& opt = {});
// Construction threshold kappa_5 >= tr+rr+2 unless table_theta5 asks for the bound table's threshold.
GeniePartition build_sym_genie_ub2(const NetworkParams& p, const Alpha& alpha,
                                   bool table_theta5 = false);
// Requires tl+rl = tr+rr = L and K = q(L+2)-1 with q odd.
GeniePartition build_offset_genie(const NetworkParams& p, double alpha);

// Coefficients d with h_1 = sum_{j>=2} d_j h_j over the rows of H_p(alpha).
struct NullRelation {
  std::vector<double> d;  // d_2..d_p
  double residual = 0;
};
NullRelation null_relation(int p, const Alpha& alpha);

// Least-squares recipes for every round. Residual above 1e-9 means the construction is broken.
double compile_recipes(GeniePartition& part, const ChannelModel& model,
                       const EncoderDependency& deps = {});

ConverseReport verify_reconstruction(GeniePartition& part, const ChannelModel& model, int trials,
                                     double tol = 1e-8, std::uint64_t seed = 1,
                                     const EncoderDependency& deps = {});
EntropyReport genie_entropy_check(const GeniePartition& part, const ChannelModel& model);
int mac_bound_value(const GeniePartition& part);

// 1/2 log(1 + P alpha^2 v_{L+1}^2 / |(v_0..v_L)|^2)
double offset_information_term(int L, double alpha, double P);

nlohmann::json to_json(const ConverseReport& r);
nlohmann::json to_json(const GeniePartition& g);

}  // namespace wyner
