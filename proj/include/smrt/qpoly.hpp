#pragma once

// Standard polynomials Q_{n,i}(t) = sum_{j=1}^{n+i} d_j(n,i) t^{2j} on [0,1]
// for one fixed level n.  Coefficients are exact rationals; conversion to
// double happens only for evaluation.
//
// Text format, one coefficient per line, order-insensitive:
//
//   # comment
//   n i j numerator denominator

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "smrt/rational.hpp"

namespace smrt {

class QTable {
 public:
  using Key = std::pair<int, int>;  // (i, j)

  /// Validates and builds a table.  Coefficients not listed are zero.
  /// Throws ValidationError listing every violated invariant.
  static QTable from_coefficients(int n, const std::map<Key, Rational>& coeffs);

  int level() const noexcept { return n_; }

  /// d_j(n, i); zero for absent j in [1, n+i].
  const Rational& coefficient(int i, int j) const;
  /// 2(n+i): the leading coefficient is always nonzero.
  int degree(int i) const;

  /// d_1..d_{n+i} of Q_{n,i}.
  const std::vector<Rational>& coefficients(int i) const;
  const std::vector<double>& float_coefficients(int i) const;

  bool operator==(const QTable& other) const {
    return n_ == other.n_ && coeffs_ == other.coeffs_;
  }

 private:
  QTable(int n, std::vector<std::vector<Rational>> coeffs);
  void check_i(int i) const;

  int n_;
  std::vector<std::vector<Rational>> coeffs_;
  std::vector<std::vector<double>> float_coeffs_;
};

/// The level-2 table.
QTable builtin_n2();

/// Q_{n,i}(t) by Horner in t^2.  DomainError for i outside [0, n] or t
/// outside [0, 1].
double eval_q(const QTable& table, int i, double t);

/// Unchecked evaluation for hot loops (t in [0, 1] assumed).
double eval_q_unchecked(const QTable& table, int i, double t) noexcept;

/// Exact Q_{n,i}(t) at rational t.
Rational eval_q_exact(const QTable& table, int i, const Rational& t);

/// Exact integral_0^1 Q_{n,i}(s) s^power ds = sum_j d_j / (2j + power + 1).
Rational q_power_moment(const QTable& table, int i, int power);

/// Exact integral_0^1 Q_{n,i}(s) s^{2m+1} ds.
Rational q_moment(const QTable& table, int i, int m);

QTable parse_qtable(std::istream& is, const std::string& source = "<stream>");
void write_qtable(std::ostream& os, const QTable& table);

QTable load_qtable(const std::string& path);
void save_qtable(const QTable& table, const std::string& path);

/// "builtin:n2" or a file path.
QTable resolve_qtable(const std::string& spec);

/// Human-readable listing of every Q_{n,i}.
std::string describe_qtable(const QTable& table);

}  // namespace smrt
