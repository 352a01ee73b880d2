#pragma once

// Exact evaluation of the level-n reconstruction operator on polynomial
// mean data.  A monomial x^a y^b u^c integrates in closed form:
//
//   int_0^z z^{2i-1} Q_{n,i}(u/z) u^c du = z^{2i+c} sum_j d_j(n,i) / (2j+c+1)

#include <array>
#include <map>
#include <string>

#include "smrt/qpoly.hpp"
#include "smrt/rational.hpp"

namespace smrt {

/// Sparse polynomial in three variables over the rationals.  The third
/// variable is u for mean data and z for reconstructions.
class RationalPolynomial {
 public:
  using Exponents = std::array<unsigned, 3>;
  using Terms = std::map<Exponents, Rational>;

  RationalPolynomial() = default;

  static RationalPolynomial monomial(const Rational& c, unsigned a, unsigned b,
                                     unsigned e);

  /// Adds c * x^a y^b w^e, dropping the term if it cancels.
  void add_term(const Exponents& e, const Rational& c);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Exponents& e) const;

  Rational operator()(const Rational& x, const Rational& y,
                      const Rational& w) const;
  double eval_double(double x, double y, double w) const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& s);
  friend RationalPolynomial operator+(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a += b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    RationalPolynomial nb = b;
    nb *= Rational(-1);
    return a += nb;
  }
  friend RationalPolynomial operator*(const Rational& s, RationalPolynomial p) {
    return p *= s;
  }

  bool operator==(const RationalPolynomial&) const = default;

  /// Terms in descending lexicographic exponent order, e.g.
  /// "65/64 x^2 y z^3 + 3/128 y z^5".  "0" for the zero polynomial.
  std::string to_string(const std::array<std::string, 3>& vars = {"x", "y",
                                                                  "u"}) const;

 private:
  Terms terms_;
};

/// Parses monomials with rational coefficients joined by + / -, e.g.
/// "1/8 x^2 y u^3 + 1/48 y u^5".  Factors may be separated by spaces or
/// '*'.  Throws ValidationError with the offending position.
RationalPolynomial parse_polynomial(const std::string& text,
                                    const std::array<std::string, 3>& vars = {
                                        "x", "y", "u"});

Rational poly_eval(const RationalPolynomial& p, const Rational& x,
                   const Rational& y, const Rational& u);
RationalPolynomial poly_add(const RationalPolynomial& a,
                            const RationalPolynomial& b);
RationalPolynomial poly_scale(const RationalPolynomial& p, const Rational& s);

/// Exact d^2/dx^2 + d^2/dy^2.
RationalPolynomial poly_laplacian_xy(const RationalPolynomial& p);

/// Exact int_0^z z^{2i-1} Q_{n,i}(u/z) p(x,y,u) du as a polynomial in (x,y,z).
RationalPolynomial oracle_radial_term(const RationalPolynomial& p,
                                      const QTable& table, int i);

/// Exact level-n reconstruction of polynomial mean data, in (x, y, z).
RationalPolynomial oracle_reconstruct(const RationalPolynomial& mf,
                                      const QTable& table);

}  // namespace smrt
