// Determinants of H_p(alpha), their real roots, and the banded M_p(alpha) matrices.
#pragma once

#include "wyner/netmodel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wyner {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// A cross-gain value with whatever exact provenance we have for it.
// Decimal literals carry an exact rational; "root:p:k" carries the root identity.
struct Alpha {
  double value = 0.0;
  std::optional<Rational> exact;
  int root_p = 0, root_k = 0;  // k-th positive root of u_p, when root_p > 0

  static Alpha of(double v) { Alpha a; a.value = v; return a; }
  static Alpha root(int p, int k);
  // Accepts "0.3", "-1", "1/3", "root:3:1", "-root:3:1".
  static Alpha parse(const std::string& text);
  std::string label() const;
  bool is_root() const { return root_p > 0; }
};

// u_p(alpha) as a polynomial in beta = alpha^2, integer coefficients, lowest degree first.
const std::vector<BigInt>& u_poly(int p);

struct DetSequence {
  double alpha = 0;
  std::vector<double> values;  // u_0 .. u_pmax
  int pmax() const { return static_cast<int>(values.size()) - 1; }
};

struct VSequence {
  double alpha = 0;
  std::vector<double> values;  // v_{-1} .. v_pmax, so v_p is values[p + 1]
  double v(int p) const { return values.at(p + 1); }
};

struct Root {
  double alpha;
  int multiplicity;
};

struct RootSet {
  int p = 0;
  std::vector<Root> roots;  // ascending
};

struct BandedM {
  int p = 0;
  double alpha = 0;
  Matrix M, inverse;
};

struct NeighborReport {
  int p = 0;
  std::vector<std::pair<int, double>> neighbors;  // (q, u_q)
  bool all_nonzero = true;
};

double det_H(int p, double alpha);
Rational det_H_exact(int p, const Rational& alpha);
DetSequence det_sequence(int pmax, double alpha);

// Zero test used for case dispatch: exact when alpha carries exact provenance,
// otherwise |u_p| <= 1e-9.
bool u_is_zero(int p, const Alpha& alpha);
inline bool u_is_zero(int p, double alpha) { return u_is_zero(p, Alpha::of(alpha)); }

RootSet critical_roots(int p);
// k-th positive root of u_p, ascending, 1-based.
double positive_root(int p, int k);

int rank_H(int p, const Alpha& alpha);
inline int rank_H(int p, double alpha) { return rank_H(p, Alpha::of(alpha)); }
int numeric_rank(const Matrix& A, double rel_tol = 1e-8);

NeighborReport neighbor_nonzero_check(int p, double alpha);

VSequence v_sequence(int pmax, double alpha);
double v_row_identity_check(int p, int l, double alpha);

BandedM build_M_and_inverse(int p, double alpha);

nlohmann::json to_json(const RootSet& r);

}  // namespace wyner
