#pragma once

#include "wyner/netmodel.hpp"

namespace testutil {

inline wyner::NetworkParams P(int K, int tl = 0, int tr = 0, int rl = 0, int rr = 0) {
  wyner::NetworkParams p;
  p.K = K;
  p.t_left = tl;
  p.t_right = tr;
  p.r_left = rl;
  p.r_right = rr;
  return p;
}

inline wyner::ChannelModel sym(const wyner::NetworkParams& p, double a) {
  return wyner::build_channel(p, wyner::Topology::Symmetric, wyner::CrossGainAssignment::equal(a));
}

inline wyner::ChannelModel asym(const wyner::NetworkParams& p, double a) {
  return wyner::build_channel(p, wyner::Topology::Asymmetric, wyner::CrossGainAssignment::equal(a));
}

}  // namespace testutil
