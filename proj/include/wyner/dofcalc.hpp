// Closed-form multiplexing-gain values and bounds, merged into intervals.
#pragma once

#include "wyner/netmodel.hpp"
#include "wyner/tridiag.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wyner {

struct BoundValue {
  std::string label;   // LB1..LB4, UB1..UB3, SI-lower, SI-upper, asym-exact, trivial
  int value = 0;
  bool applicable = true;
  std::string reason;  // why not applicable
};

struct DofInterval {
  int lower = 0, upper = 0;
  std::string lower_by, upper_by;
  std::vector<BoundValue> bounds;
  bool exact() const { return lower == upper; }
};

struct PerUserAsymptote {
  Rational lower, upper;
  bool exact() const { return lower == upper; }
};

// Which threshold to use where the sources disagree.
struct BoundOptions {
  bool theta4_prose = false;  // kappa_4 >= min{tl+rl+1, tr+rr+1} instead of +2
  bool theta5_proof = false;  // kappa_5 >= tr+rr+2 instead of tr+rr+1
};

struct BoundAux {
  int beta = 0, gamma = 0, kappa = 0;  // asymmetric closed form
  int b[6]{}, g[6]{}, k[6]{}, th[6]{};  // index 1..5
  int kappa_t = 0, gamma_t = 0;        // K mod (s+2), floor(K/(s+2)) with s = tl+rl
  int delta2 = 0;
};

BoundAux bound_aux(const NetworkParams& p, const BoundOptions& opt = {});

int ceil_pos(int num, int den);  // ceil(num/den), 0 when num <= 0
int theta_012(int kappa);

int asym_mg(const NetworkParams& p);
Rational asym_mg_per_user(const NetworkParams& p);

bool symmetric_si(const NetworkParams& p);  // tl + rl == tr + rr

// Interval under symmetric side information (tl + rl == tr + rr).
DofInterval sym_mg_symmetric_si(const NetworkParams& p, const Alpha& alpha);
PerUserAsymptote sym_mg_per_user(const NetworkParams& p, const Alpha& alpha);

std::vector<BoundValue> sym_lower_bounds(const NetworkParams& p);
// alpha empty: determinant-dependent bounds are reported not applicable.
std::vector<BoundValue> sym_upper_bounds(const NetworkParams& p, const std::optional<Alpha>& alpha,
                                         const BoundOptions& opt = {});

DofInterval sym_dof_interval(const NetworkParams& p, const std::optional<Alpha>& alpha,
                             const BoundOptions& opt = {});
// Asymmetric models give the closed-form value, symmetric ones the merged interval.
DofInterval dof_interval(const ChannelModel& m, const std::optional<Alpha>& alpha,
                         const BoundOptions& opt = {});

double power_offset_prediction(int L, double alpha, double alpha_star, double nu);

nlohmann::json to_json(const DofInterval& d);
nlohmann::json to_json(const PerUserAsymptote& a);

}  // namespace wyner
