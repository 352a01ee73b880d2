#include "smrt/qpoly.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

#include "smrt/core.hpp"

namespace smrt {

// ---- rationals -------------------------------------------------------------

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {
// cpp_int reads a leading 0 as an octal prefix.
Integer decimal_integer(std::string digits) {
  const auto nz = digits.find_first_not_of('0');
  digits.erase(0, nz == std::string::npos ? digits.size() - 1 : nz);
  return Integer(digits);
}

Integer signed_decimal(const std::string& tok) {
  static const std::regex re(R"(([+-]?)(\d+))");
  std::smatch m;
  if (!std::regex_match(tok, m, re)) throw std::invalid_argument(tok);
  const Integer v = decimal_integer(m[2].str());
  return m[1].str() == "-" ? Integer(-v) : v;
}
}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex frac_re(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  static const std::regex dec_re(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  std::smatch mt;
  if (std::regex_match(text, mt, frac_re)) {
    const std::string s = mt[1].str();
    const bool neg = s[0] == '-';
    Integer num = decimal_integer(s[0] == '+' || neg ? s.substr(1) : s);
    if (neg) num = -num;
    Integer den(1);
    if (mt[2].matched) den = decimal_integer(mt[2].str());
    if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (std::regex_match(text, mt, dec_re)) {
    const std::string whole = mt[2].str().empty() ? "0" : mt[2].str();
    const std::string frac = mt[3].str();
    Integer num = decimal_integer(whole + frac);
    Integer den = boost::multiprecision::pow(Integer(10),
                                             static_cast<unsigned>(frac.size()));
    Rational r(num, den);
    return mt[1].str() == "-" ? Rational(-r) : r;
  }
  throw ValidationError("not a rational number: '" + text + "'");
}

// ---- QTable ----------------------------------------------------------------

QTable::QTable(int n, std::vector<std::vector<Rational>> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  float_coeffs_.reserve(coeffs_.size());
  for (const auto& row : coeffs_) {
    std::vector<double> f;
    f.reserve(row.size());
    for (const auto& c : row) f.push_back(to_double(c));
    float_coeffs_.push_back(std::move(f));
  }
}

QTable QTable::from_coefficients(int n, const std::map<Key, Rational>& coeffs) {
  std::vector<std::string> issues;
  if (n < 0) throw ValidationError("level n must be >= 0");

  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n + i),
                                             Rational(0));

  for (const auto& [key, value] : coeffs) {
    const auto [i, j] = key;
    const std::string where =
        "(i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
    if (i < 0 || i > n) {
      issues.push_back(where + ": i outside [0, " + std::to_string(n) + "]");
      continue;
    }
    if (j == 0) {
      issues.push_back(where + ": constant term forbidden");
      continue;
    }
    if (j < 0 || j > n + i) {
      issues.push_back(where + ": j outside [1, n+i=" + std::to_string(n + i) +
                       "]");
      continue;
    }
    rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] = value;
  }
  for (int i = 0; i <= n; ++i) {
    if (rows[static_cast<std::size_t>(i)].back() == 0)
      issues.push_back("(i=" + std::to_string(i) + ", j=" +
                       std::to_string(n + i) +
                       "): degree deficit, leading coefficient missing or zero");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return QTable(n, std::move(rows));
}

void QTable::check_i(int i) const {
  if (i < 0 || i > n_)
    throw DomainError("polynomial index i=" + std::to_string(i) +
                      " outside [0, " + std::to_string(n_) + "]");
}

const Rational& QTable::coefficient(int i, int j) const {
  check_i(i);
  if (j < 1 || j > n_ + i)
    throw DomainError("coefficient index j=" + std::to_string(j) +
                      " outside [1, " + std::to_string(n_ + i) + "]");
  return coeffs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
}

int QTable::degree(int i) const {
  check_i(i);
  return 2 * (n_ + i);
}

const std::vector<Rational>& QTable::coefficients(int i) const {
  check_i(i);
  return coeffs_[static_cast<std::size_t>(i)];
}

const std::vector<double>& QTable::float_coefficients(int i) const {
  check_i(i);
  return float_coeffs_[static_cast<std::size_t>(i)];
}

QTable builtin_n2() {
  using R = Rational;
  // Q_{2,0} = 105/2 (t^2 - 3t^4)
  // Q_{2,1} = 105/2 (t^2/4 - t^4 + 3t^6/4)
  // Q_{2,2} = 315/64 (t^2/6 - t^4/2 + t^6/2 - t^8/6)
  const R a(105, 2);
  const R b(315, 64);
  std::map<QTable::Key, Rational> c{
      {{0, 1}, a},
      {{0, 2}, a * -3},
      {{1, 1}, a * R(1, 4)},
      {{1, 2}, -a},
      {{1, 3}, a * R(3, 4)},
      {{2, 1}, b * R(1, 6)},
      {{2, 2}, b * R(-1, 2)},
      {{2, 3}, b * R(1, 2)},
      {{2, 4}, b * R(-1, 6)},
  };
  return QTable::from_coefficients(2, c);
}

double eval_q_unchecked(const QTable& table, int i, double t) noexcept {
  const auto& c = table.float_coefficients(i);
  const double t2 = t * t;
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t2 + *it;
  return acc * t2;
}

double eval_q(const QTable& table, int i, double t) {
  if (i < 0 || i > table.level())
    throw DomainError("polynomial index i=" + std::to_string(i) +
                      " outside [0, " + std::to_string(table.level()) + "]");
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("Q argument t must lie in [0, 1]");
  return eval_q_unchecked(table, i, t);
}

Rational eval_q_exact(const QTable& table, int i, const Rational& t) {
  const auto& c = table.coefficients(i);
  const Rational t2 = t * t;
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t2 + *it;
  return acc * t2;
}

Rational q_power_moment(const QTable& table, int i, int power) {
  if (power < 0) throw DomainError("moment power must be >= 0");
  const auto& c = table.coefficients(i);
  Rational sum = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int j = static_cast<int>(k) + 1;
    if (c[k] != 0) sum += c[k] / Rational(2 * j + power + 1);
  }
  return sum;
}

Rational q_moment(const QTable& table, int i, int m) {
  if (m < 0) throw DomainError("moment index m must be >= 0");
  return q_power_moment(table, i, 2 * m + 1);
}

// ---- file format -----------------------------------------------------------

QTable parse_qtable(std::istream& is, const std::string& source) {
  std::vector<std::string> issues;
  std::map<QTable::Key, Rational> coeffs;
  std::map<QTable::Key, std::size_t> first_seen;
  int level = -1;
  std::size_t level_line = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::vector<std::string> tok;
    for (std::string t; row >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string where = source + ":" + std::to_string(lineno);
    if (tok.size() != 5) {
      issues.push_back(where + ": expected 'n i j numerator denominator'");
      continue;
    }
    long long n = 0, i = 0, j = 0;
    Rational value;
    try {
      std::size_t used = 0;
      n = std::stoll(tok[0], &used);
      if (used != tok[0].size()) throw std::invalid_argument("n");
      i = std::stoll(tok[1], &used);
      if (used != tok[1].size()) throw std::invalid_argument("i");
      j = std::stoll(tok[2], &used);
      if (used != tok[2].size()) throw std::invalid_argument("j");
      const Integer num = signed_decimal(tok[3]);
      const Integer den = signed_decimal(tok[4]);
      if (den == 0) {
        issues.push_back(where + ": zero denominator");
        continue;
      }
      value = Rational(num, den);
    } catch (const std::exception&) {
      issues.push_back(where + ": malformed row");
      continue;
    }

    if (level < 0) {
      level = static_cast<int>(n);
      level_line = lineno;
      if (level < 0) {
        issues.push_back(where + ": level n must be >= 0");
        level = -1;
        continue;
      }
    } else if (n != level) {
      issues.push_back(where + ": level n=" + std::to_string(n) +
                       " differs from n=" + std::to_string(level) +
                       " declared on line " + std::to_string(level_line));
      continue;
    }
    if (j == 0) {
      issues.push_back(where + ": constant term forbidden");
      continue;
    }
    if (i < 0 || i > n) {
      issues.push_back(where + ": i=" + std::to_string(i) + " outside [0, " +
                       std::to_string(n) + "]");
      continue;
    }
    if (j < 0 || j > n + i) {
      issues.push_back(where + ": j=" + std::to_string(j) + " exceeds n+i=" +
                       std::to_string(n + i));
      continue;
    }
    const QTable::Key key{static_cast<int>(i), static_cast<int>(j)};
    if (auto it = first_seen.find(key); it != first_seen.end()) {
      issues.push_back(where + ": duplicate (i=" + std::to_string(i) +
                       ", j=" + std::to_string(j) + "), first on line " +
                       std::to_string(it->second));
      continue;
    }
    first_seen.emplace(key, lineno);
    coeffs.emplace(key, value);
  }

  if (level < 0 && issues.empty()) issues.push_back(source + ": no coefficient rows");
  if (!issues.empty()) throw ValidationError(std::move(issues));

  try {
    return QTable::from_coefficients(level, coeffs);
  } catch (const ValidationError& e) {
    std::vector<std::string> named;
    for (const auto& s : e.issues()) named.push_back(source + ": " + s);
    throw ValidationError(std::move(named));
  }
}

void write_qtable(std::ostream& os, const QTable& table) {
  os << "# n i j numerator denominator\n";
  const int n = table.level();
  for (int i = 0; i <= n; ++i) {
    const auto& c = table.coefficients(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      os << n << ' ' << i << ' ' << (k + 1) << ' '
         << boost::multiprecision::numerator(c[k]) << ' '
         << boost::multiprecision::denominator(c[k]) << '\n';
    }
  }
}

QTable load_qtable(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open Q table '" + path + "'");
  return parse_qtable(is, path);
}

void save_qtable(const QTable& table, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  write_qtable(os, table);
  if (!os) throw ValidationError("write to '" + path + "' failed");
}

QTable resolve_qtable(const std::string& spec) {
  if (spec == "builtin:n2") return builtin_n2();
  if (spec.rfind("builtin:", 0) == 0)
    throw ValidationError("unknown built-in Q table '" + spec +
                          "' (only builtin:n2 is available)");
  return load_qtable(spec);
}

std::string describe_qtable(const QTable& table) {
  std::ostringstream os;
  const int n = table.level();
  os << "n = " << n << '\n';
  for (int i = 0; i <= n; ++i) {
    os << "Q_{" << n << "," << i << "}(t) =";
    const auto& c = table.coefficients(i);
    bool first = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      const bool neg = c[k] < 0;
      os << (first ? (neg ? " -" : " ") : (neg ? " - " : " + "))
         << to_string(neg ? Rational(-c[k]) : c[k]) << " t^" << 2 * (k + 1);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace smrt
