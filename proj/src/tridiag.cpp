#include "wyner/tridiag.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>

namespace wyner {

namespace {

using Poly = std::vector<Rational>;  // lowest degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Rational eval(const Poly& f, const Rational& x) {
  Rational acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Poly derivative(const Poly& f) {
  Poly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<int>(i));
  trim(d);
  return d;
}

// Remainder of f divided by g (g nonzero).
Poly rem(Poly f, const Poly& g) {
  trim(f);
  const size_t dg = g.size() - 1;
  while (f.size() >= g.size()) {
    Rational c = f.back() / g.back();
    size_t shift = f.size() - 1 - dg;
    for (size_t i = 0; i <= dg; ++i) f[shift + i] -= c * g[i];
    f.pop_back();
    trim(f);
  }
  return f;
}

Poly quotient(Poly f, const Poly& g) {
  trim(f);
  const size_t dg = g.size() - 1;
  if (f.size() < g.size()) return {};
  Poly q(f.size() - dg, Rational(0));
  while (f.size() >= g.size()) {
    Rational c = f.back() / g.back();
    size_t shift = f.size() - 1 - dg;
    q[shift] = c;
    for (size_t i = 0; i <= dg; ++i) f[shift + i] -= c * g[i];
    f.pop_back();
    trim(f);
  }
  trim(q);
  return q;
}

Poly monic(Poly f) {
  trim(f);
  if (f.empty()) return f;
  Rational lead = f.back();
  for (auto& c : f) c /= lead;
  return f;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, derivative(f)};
  while (!chain.back().empty() && chain.back().size() > 1) {
    Poly r = rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes(const std::vector<Poly>& chain, const Rational& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Distinct roots in (lo, hi].
int count_roots(const std::vector<Poly>& chain, const Rational& lo, const Rational& hi) {
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

Poly to_rational(const std::vector<BigInt>& f) {
  Poly p;
  for (const auto& c : f) p.emplace_back(c);
  trim(p);
  return p;
}

// Isolating interval (lo, hi] for one positive root in beta, plus the data needed
// to answer exact zero questions later.
struct BetaRoot {
  Rational lo, hi;  // lo < beta* <= hi; hi - lo tiny
  double beta;
  int multiplicity;
};

struct RootCache {
  std::mutex mu;
  std::map<int, std::vector<BetaRoot>> beta_roots;
  std::map<std::tuple<int, int, int>, bool> zero_at_root;
};

RootCache& cache() {
  static RootCache c;
  return c;
}

Rational cauchy_bound(const Poly& f) {
  Rational m = 0;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    Rational r = abs(f[i] / f.back());
    if (r > m) m = r;
  }
  return m + 1;
}

int multiplicity_in(const Poly& f, const Rational& lo, const Rational& hi) {
  Poly g = gcd(f, derivative(f));
  if (g.size() <= 1) return 1;
  auto chain = sturm_chain(g);
  if (count_roots(chain, lo, hi) == 0) return 1;
  return 1 + multiplicity_in(g, lo, hi);
}

std::vector<BetaRoot> isolate_beta_roots(int p) {
  Poly f = to_rational(u_poly(p));
  std::vector<BetaRoot> out;
  if (f.size() <= 1) return out;
  Poly sqfree = monic(quotient(f, gcd(f, derivative(f))));
  auto chain = sturm_chain(sqfree);

  std::vector<std::pair<Rational, Rational>> work{{Rational(0), cauchy_bound(sqfree)}};
  std::vector<std::pair<Rational, Rational>> isolated;
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    int n = count_roots(chain, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    work.emplace_back(mid, hi);
    work.emplace_back(lo, mid);
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const Rational width_stop = Rational(1, BigInt(1) << 64);
  for (auto [lo, hi] : isolated) {
    // Root of the square-free part is simple, so the sign differs across it.
    int s_hi = sgn(eval(sqfree, hi));
    while (hi - lo > width_stop * (hi + 1)) {
      Rational mid = (lo + hi) / 2;
      int s = sgn(eval(sqfree, mid));
      if (s == 0) {
        lo = mid - width_stop;
        hi = mid;
        break;
      }
      if (s == s_hi) hi = mid; else lo = mid;
    }
    BetaRoot r;
    r.lo = lo;
    r.hi = hi;
    r.beta = static_cast<double>((lo + hi) / 2);
    r.multiplicity = multiplicity_in(f, lo, hi);
    out.push_back(r);
  }
  return out;
}

const std::vector<BetaRoot>& beta_roots(int p) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto it = c.beta_roots.find(p);
  if (it == c.beta_roots.end()) it = c.beta_roots.emplace(p, isolate_beta_roots(p)).first;
  return it->second;
}

Rational parse_decimal(const std::string& s) {
  static const std::regex dec(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  static const std::regex frac(R"(([+-]?\d+)/(\d+))");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    const auto strip = [](std::string t) {
      const size_t neg = !t.empty() && (t[0] == '-' || t[0] == '+');
      const size_t nz = t.find_first_not_of('0', neg);
      t.erase(neg, (nz == std::string::npos ? t.size() - 1 : nz) - neg);
      if (!t.empty() && t[0] == '+') t.erase(0, 1);
      return t;
    };
    BigInt den(strip(m[2].str()));
    if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
    return Rational(BigInt(strip(m[1].str())), den);
  }
  if (!std::regex_match(s, m, dec) || (m[2].length() == 0 && m[3].length() == 0))
    throw InvalidInput("cannot parse number '" + s + "'");
  std::string digits = m[2].str() + m[3].str();
  // cpp_int reads a leading 0 as octal
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  if (digits.empty()) digits = "0";
  long exp10 = -static_cast<long>(m[3].length());
  if (m[4].matched) exp10 += std::stol(m[4].str());
  if (exp10 > 400 || exp10 < -400) throw InvalidInput("exponent out of range in '" + s + "'");
  BigInt num(digits);
  BigInt scale = 1;
  for (long i = 0; i < std::labs(exp10); ++i) scale *= 10;
  Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
  return m[1].str() == "-" ? Rational(-r) : r;
}

}  // namespace

const std::vector<BigInt>& u_poly(int p) {
  static std::mutex mu;
  static std::deque<std::vector<BigInt>> table{{1}, {1}};
  if (p < 0) throw InvalidInput("u_p needs p >= 0");
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= p) {
    const auto& a = table[table.size() - 1];
    const auto& b = table[table.size() - 2];
    std::vector<BigInt> next(std::max(a.size(), b.size() + 1), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) next[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) next[i + 1] -= b[i];
    table.push_back(std::move(next));
  }
  return table[p];
}

Alpha Alpha::root(int p, int k) {
  Alpha a;
  a.value = positive_root(p, k);
  a.root_p = p;
  a.root_k = k;
  return a;
}

Alpha Alpha::parse(const std::string& text) {
  static const std::regex tok(R"(([+-]?)root:(\d+):(\d+))");
  std::smatch m;
  if (std::regex_match(text, m, tok)) {
    Alpha a = root(std::stoi(m[2].str()), std::stoi(m[3].str()));
    if (m[1].str() == "-") a.value = -a.value;
    return a;
  }
  Alpha a;
  a.exact = parse_decimal(text);
  a.value = static_cast<double>(*a.exact);
  return a;
}

std::string Alpha::label() const {
  if (is_root()) {
    std::string s = "root:" + std::to_string(root_p) + ":" + std::to_string(root_k);
    return value < 0 ? "-" + s : s;
  }
  if (exact) return exact->str();
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

double det_H(int p, double alpha) {
  if (p < 0) throw InvalidInput("det_H needs p >= 0");
  const double a2 = alpha * alpha;
  double prev = 1, cur = 1;  // u_0, u_1
  if (p == 0) return 1;
  for (int q = 2; q <= p; ++q) {
    double next = cur - a2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational det_H_exact(int p, const Rational& alpha) {
  if (p < 0) throw InvalidInput("det_H needs p >= 0");
  const Rational a2 = alpha * alpha;
  Rational prev = 1, cur = 1;
  if (p == 0) return 1;
  for (int q = 2; q <= p; ++q) {
    Rational next = cur - a2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

DetSequence det_sequence(int pmax, double alpha) {
  DetSequence s;
  s.alpha = alpha;
  s.values.resize(pmax + 1);
  for (int q = 0; q <= pmax; ++q) {
    if (q <= 1) s.values[q] = 1;
    else s.values[q] = s.values[q - 1] - alpha * alpha * s.values[q - 2];
  }
  return s;
}

bool u_is_zero(int p, const Alpha& alpha) {
  if (p <= 1) return false;
  if (alpha.is_root()) {
    auto key = std::make_tuple(alpha.root_p, alpha.root_k, p);
    {
      std::lock_guard<std::mutex> lock(cache().mu);
      auto it = cache().zero_at_root.find(key);
      if (it != cache().zero_at_root.end()) return it->second;
    }
    const BetaRoot r = beta_roots(alpha.root_p).at(alpha.root_k - 1);
    Poly g = gcd(to_rational(u_poly(alpha.root_p)), to_rational(u_poly(p)));
    bool zero = false;
    if (g.size() > 1) zero = count_roots(sturm_chain(g), r.lo, r.hi) > 0;
    std::lock_guard<std::mutex> lock(cache().mu);
    cache().zero_at_root[key] = zero;
    return zero;
  }
  if (alpha.exact) return det_H_exact(p, *alpha.exact) == 0;
  return std::abs(det_H(p, alpha.value)) <= 1e-9;
}

RootSet critical_roots(int p) {
  if (p < 2) throw InvalidInput("critical roots need p >= 2");
  RootSet rs;
  rs.p = p;
  const auto& br = beta_roots(p);
  for (auto it = br.rbegin(); it != br.rend(); ++it)
    rs.roots.push_back({-std::sqrt(it->beta), it->multiplicity});
  for (const auto& r : br) rs.roots.push_back({std::sqrt(r.beta), r.multiplicity});
  return rs;
}

double positive_root(int p, int k) {
  if (p < 2) throw InvalidInput("u_p has no roots for p < 2");
  const auto& br = beta_roots(p);
  if (k < 1 || k > static_cast<int>(br.size()))
    throw InvalidInput("u_" + std::to_string(p) + " has " + std::to_string(br.size()) +
                       " positive roots; asked for #" + std::to_string(k));
  return std::sqrt(br[k - 1].beta);
}

int rank_H(int p, const Alpha& alpha) {
  if (p < 1) throw InvalidInput("rank_H needs p >= 1");
  return u_is_zero(p, alpha) ? p - 1 : p;
}

int numeric_rank(const Matrix& A, double rel_tol) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& s = svd.singularValues();
  const double top = s(0);
  if (top == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * top) ++r;
  return r;
}

NeighborReport neighbor_nonzero_check(int p, double alpha) {
  if (p < 1 || std::abs(det_H(p, alpha)) > 1e-9)
    throw InvalidInput("neighbor check requires u_p(alpha) = 0");
  NeighborReport rep;
  rep.p = p;
  std::vector<int> qs;
  if (p > 2) qs.push_back(p - 2);
  qs.insert(qs.end(), {p - 1, p + 1, p + 2});
  for (int q : qs) {
    double u = det_H(q, alpha);
    rep.neighbors.emplace_back(q, u);
    if (std::abs(u) <= 1e-9) rep.all_nonzero = false;
  }
  return rep;
}

VSequence v_sequence(int pmax, double alpha) {
  if (alpha == 0) throw InvalidInput("v_p needs alpha != 0");
  if (pmax < 0) throw InvalidInput("v_p needs pmax >= 0");
  VSequence s;
  s.alpha = alpha;
  s.values = {0.0, 1.0};
  for (int p = 1; p <= pmax; ++p) {
    double next = -s.values[p] / alpha - s.values[p - 1];
    s.values.push_back(next);
  }
  return s;
}

double v_row_identity_check(int p, int l, double alpha) {
  if (l < 0) throw InvalidInput("row identity needs l >= 0");
  VSequence v = v_sequence(l + p, alpha);
  Eigen::RowVectorXd row(p);
  for (int i = 0; i < p; ++i) row(i) = v.v(l + i);
  Eigen::RowVectorXd lhs = row * H_p(p, alpha);
  Eigen::RowVectorXd rhs = Eigen::RowVectorXd::Zero(p);
  rhs(0) += -alpha * v.v(l - 1);
  rhs(p - 1) += -alpha * v.v(l + p);  // p = 1: both boundary terms land in one entry
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

BandedM build_M_and_inverse(int p, double alpha) {
  if (alpha == 0) throw InvalidInput("inverse requires alpha != 0");
  if (p < 2) throw InvalidInput("M_p needs p >= 2");
  BandedM b;
  b.p = p;
  b.alpha = alpha;
  b.M = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    b.M(i, i) = alpha;
    if (i + 1 < p) b.M(i, i + 1) = 1;
    if (i + 2 < p) b.M(i, i + 2) = alpha;
  }
  b.inverse = b.M.triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
  return b;
}

nlohmann::json to_json(const RootSet& r) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& x : r.roots) roots.push_back({{"alpha", x.alpha}, {"multiplicity", x.multiplicity}});
  return {{"p", r.p}, {"roots", roots}};
}

}  // namespace wyner
