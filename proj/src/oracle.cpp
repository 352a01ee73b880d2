#include "smrt/oracle.hpp"

#include <cctype>
#include <sstream>

#include "smrt/core.hpp"

namespace smrt {

RationalPolynomial RationalPolynomial::monomial(const Rational& c, unsigned a,
                                                unsigned b, unsigned e) {
  RationalPolynomial p;
  p.add_term({a, b, e}, c);
  return p;
}

void RationalPolynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational RationalPolynomial::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

template <class T>
T ipow(const T& base, unsigned e) {
  T r = 1;
  for (unsigned k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

Rational RationalPolynomial::operator()(const Rational& x, const Rational& y,
                                        const Rational& w) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_)
    sum += c * ipow(x, e[0]) * ipow(y, e[1]) * ipow(w, e[2]);
  return sum;
}

double RationalPolynomial::eval_double(double x, double y, double w) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_)
    sum += to_double(c) * ipow(x, e[0]) * ipow(y, e[1]) * ipow(w, e[2]);
  return sum;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

std::string RationalPolynomial::to_string(
    const std::array<std::string, 3>& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;

    const bool constant = e[0] == 0 && e[1] == 0 && e[2] == 0;
    bool wrote = false;
    if (mag != 1 || constant) {
      os << smrt::to_string(mag);
      wrote = true;
    }
    for (std::size_t d = 0; d < 3; ++d) {
      if (e[d] == 0) continue;
      if (wrote) os << ' ';
      os << vars[d];
      if (e[d] > 1) os << '^' << e[d];
      wrote = true;
    }
  }
  return os.str();
}

// ---- parser ----------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::array<std::string, 3>& vars)
      : s_(text), vars_(vars) {}

  RationalPolynomial parse() {
    RationalPolynomial out;
    skip_ws();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      out.add_term(e, sign * c);
      skip_ws();
    }
    return out;
  }

 private:
  std::pair<RationalPolynomial::Exponents, Rational> term() {
    RationalPolynomial::Exponents e{0, 0, 0};
    Rational c = 1;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      c = number();
      any = true;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        const Rational den = number();
        if (den == 0) fail("division by zero");
        c /= den;
        skip_ws();
      }
    }
    while (!at_end()) {
      std::size_t save = pos_;
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(peek())))
          fail("expected a variable after '*'");
      }
      if (!std::isalpha(static_cast<unsigned char>(peek()))) {
        pos_ = save;
        break;
      }
      const std::size_t start = pos_;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      std::size_t d = 0;
      while (d < 3 && vars_[d] != name) ++d;
      if (d == 3) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      unsigned power = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        const std::size_t pstart = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pstart == pos_) fail("expected an exponent");
        power = static_cast<unsigned>(std::stoul(s_.substr(pstart, pos_ - pstart)));
        skip_ws();
      }
      e[d] += power;
      any = true;
    }
    if (!any) fail("expected a coefficient or variable");
    return {e, c};
  }

  Rational number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                         peek() == '.'))
      ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const ValidationError&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("polynomial parse error at column " +
                          std::to_string(pos_ + 1) + ": " + what + " in '" +
                          s_ + "'");
  }

  const std::string& s_;
  const std::array<std::string, 3>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalPolynomial parse_polynomial(const std::string& text,
                                    const std::array<std::string, 3>& vars) {
  return PolyParser(text, vars).parse();
}

// ---- operator --------------------------------------------------------------

Rational poly_eval(const RationalPolynomial& p, const Rational& x,
                   const Rational& y, const Rational& u) {
  return p(x, y, u);
}

RationalPolynomial poly_add(const RationalPolynomial& a,
                            const RationalPolynomial& b) {
  return a + b;
}

RationalPolynomial poly_scale(const RationalPolynomial& p, const Rational& s) {
  return s * p;
}

RationalPolynomial poly_laplacian_xy(const RationalPolynomial& p) {
  RationalPolynomial out;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] >= 2)
      out.add_term({e[0] - 2, e[1], e[2]}, c * Rational(e[0] * (e[0] - 1)));
    if (e[1] >= 2)
      out.add_term({e[0], e[1] - 2, e[2]}, c * Rational(e[1] * (e[1] - 1)));
  }
  return out;
}

RationalPolynomial oracle_radial_term(const RationalPolynomial& p,
                                      const QTable& table, int i) {
  RationalPolynomial out;
  for (const auto& [e, c] : p.terms()) {
    const Rational moment = q_power_moment(table, i, static_cast<int>(e[2]));
    out.add_term({e[0], e[1], static_cast<unsigned>(2 * i) + e[2]}, c * moment);
  }
  return out;
}

RationalPolynomial oracle_reconstruct(const RationalPolynomial& mf,
                                      const QTable& table) {
  const int n = table.level();
  const Rational weight = Rational(2 * n * n + 3 * n + 1);
  RationalPolynomial bracket = weight * mf;
  RationalPolynomial lap = mf;
  for (int i = 0; i <= n; ++i) {
    bracket += oracle_radial_term(lap, table, i);
    lap = poly_laplacian_xy(lap);
  }
  return Rational(2) * bracket;
}

}  // namespace smrt
