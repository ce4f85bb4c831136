// Achievability plans: silencing patterns, subnet schemes, and a linear-algebra certifier.
#pragma once

#include "wyner/dofcalc.hpp"
#include "wyner/netmodel.hpp"
#include "wyner/tridiag.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wyner {

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StrategyTag {
  SingleUserSICLeft,
  DPCLeft,
  DPCRightScaled,
  SingleUserSICRight,
  MimoP2P,
  MimoBC,
  MimoMAC,
  DoublePairSICLeft,
  DoublePairDPC,
  MirroredDoublePair,
  CentralMimoDecode,
  Skipped,
  Silenced
};

const char* to_string(StrategyTag t);
StrategyTag tag_from_string(const std::string& s);

// One codeword stream carried by a single transmitter.
// The receiver of `msg` decodes it from `antenna`, after removing interference that the
// carrier dirty-paper coded against (`dpc`) or that it can rebuild from earlier decodes.
// When `joint` is non-empty the receiver instead zero-forces on those antennas.
struct Stream {
  int msg = 0, carrier = 0, antenna = 0;
  std::vector<int> dpc;
  std::vector<int> joint;
  StrategyTag tag = StrategyTag::SingleUserSICLeft;
};

struct MimoMessage {
  int msg = 0;
  std::vector<int> tx, ants;
  int prelog = 0;
};

// Cooperative transmission over a subnet (point-to-point, broadcast or multi-access).
struct MimoGroup {
  StrategyTag tag = StrategyTag::MimoP2P;
  std::vector<int> tx, ants;
  std::vector<MimoMessage> messages;
};

struct Subnet {
  std::vector<int> tx, rx;
  bool reduced = false;
  std::array<int, 4> reduced_params{};  // tl', tr', rl', rr'
};

struct TransmissionPlan {
  NetworkParams params;
  Topology topology = Topology::Asymmetric;
  std::string family;
  std::vector<int> silenced;  // transmitters (pairs for the symmetric patterns)
  std::vector<Subnet> subnets;
  std::vector<Stream> streams;
  std::vector<MimoGroup> groups;
  int claimed_dof = 0;

  std::map<int, StrategyTag> strategies() const;
  std::map<int, int> prelogs() const;
};

struct CertReport {
  bool pass = false;
  int certified_dof = 0;
  std::string failed_check;  // "a".."d" or "plan"
  std::string detail;
};

TransmissionPlan asym_plan(const NetworkParams& p);
// Asymmetric subnet schemes over the runs left between silenced transmitters.
TransmissionPlan asym_plan_from_silenced(const NetworkParams& p, std::vector<int> silenced,
                                         const std::string& family);
std::vector<TransmissionPlan> fair_time_sharing_plan(const NetworkParams& p);

// Silence tx/rx pairs and run a MIMO scheme in every remaining block.
// claim_full: claim every block at full size instead of rank H_kappa(alpha).
TransmissionPlan sym_pair_silencing_plan(const NetworkParams& p, const Alpha& alpha,
                                         std::vector<int> silenced, const std::string& family,
                                         bool claim_full = false);
TransmissionPlan sym_symmetric_si_plan(const NetworkParams& p, const Alpha& alpha);
// bound_label in {LB1, LB2, LB3, LB4}; throws NotApplicable with the reason.
TransmissionPlan sym_general_plan(const NetworkParams& p, const std::string& bound_label);

CertReport certify_plan(const TransmissionPlan& plan, const ChannelModel& model);

nlohmann::json to_json(const TransmissionPlan& plan);
TransmissionPlan plan_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CertReport& r);

}  // namespace wyner
