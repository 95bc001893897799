#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"

namespace mlegendre {

/// One problem instance: exponent pairs (p_j, q_j), an optional order m of
/// the simultaneous approximation, and the rational evaluation point z.
struct ParamSet {
  std::vector<long> p;
  std::vector<long> q;
  std::optional<int> m;
  Rational z{-1};
  std::string name;

  int n() const { return static_cast<int>(p.size()); }

  /// M = sum of p_l + q_l.
  long weight() const {
    return std::accumulate(p.begin(), p.end(), 0L) + std::accumulate(q.begin(), q.end(), 0L);
  }

  long diagonal(int j) const { return p[static_cast<std::size_t>(j)] + q[static_cast<std::size_t>(j)]; }

  /// p_1 <= ... <= p_{k} and q_1 <= ... <= q_{k}.
  bool monotone_prefix(int k) const {
    const auto kk = static_cast<std::size_t>(std::min(k, n()));
    return std::is_sorted(p.begin(), p.begin() + static_cast<long>(kk)) &&
           std::is_sorted(q.begin(), q.begin() + static_cast<long>(kk));
  }

  bool monotone() const { return m && monotone_prefix(*m + 1); }

  /// Throws PreconditionError describing the first violated constraint.
  void validate() const {
    if (p.empty()) throw PreconditionError("n must be at least 1");
    if (p.size() != q.size()) throw PreconditionError("p and q must have the same length");
    for (long x : p)
      if (x <= 0) throw PreconditionError("every p_j must be positive");
    for (long x : q)
      if (x < 0) throw PreconditionError("every q_j must be nonnegative");
    if (m) {
      if (*m < 1 || *m > n() - 1)
        throw PreconditionError("m must satisfy 1 <= m <= n-1 (n = " + std::to_string(n()) + ")");
    }
    if (z >= 0 && z <= 1) throw PreconditionError("z must lie outside [0, 1]");
  }

  /// Numerator a and denominator b of z = a/b in lowest terms.
  Integer z_num() const { return z.get_num(); }
  Integer z_den() const { return z.get_den(); }

  /// Exchange the roles of p and q and replace z by 1 - z.
  ParamSet mirrored() const {
    ParamSet r = *this;
    std::swap(r.p, r.q);
    r.z = Rational(1) - z;
    r.name = name.empty() ? std::string() : name + "-mirror";
    return r;
  }
};

/// Throws unless the parameters define a multiple Legendre polynomial.
inline void check_exponents(const std::vector<long>& p, const std::vector<long>& q) {
  if (p.size() != q.size()) throw PreconditionError("p and q must have the same length");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < 0 || q[i] < 0) throw PreconditionError("exponents must be nonnegative");
}

}  // namespace mlegendre
