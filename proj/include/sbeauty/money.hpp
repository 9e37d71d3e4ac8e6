#pragma once

#include <string>
#include <string_view>

#include "sbeauty/errors.hpp"
#include "sbeauty/rational.hpp"

namespace sbeauty {

// Payoff amount of the form  constant + coeff * e  where e is a symbolic
// positive infinitesimal used to break ties (a sweetener too small to matter
// against any real stake). Ordering is lexicographic: the constant decides,
// the e-coefficient only breaks exact ties. eval_at() substitutes a concrete
// value for e to show where a real-valued sweetener changes a verdict.
struct MoneyExpr {
  Rational constant;
  Rational coeff;  // multiplies e

  friend MoneyExpr operator+(const MoneyExpr& a, const MoneyExpr& b) {
    return {a.constant + b.constant, a.coeff + b.coeff};
  }
  friend MoneyExpr operator-(const MoneyExpr& a, const MoneyExpr& b) {
    return {a.constant - b.constant, a.coeff - b.coeff};
  }
  MoneyExpr operator-() const { return {-constant, -coeff}; }
  friend MoneyExpr operator*(const Rational& k, const MoneyExpr& m) {
    return {k * m.constant, k * m.coeff};
  }
  MoneyExpr& operator+=(const MoneyExpr& o) { return *this = *this + o; }
  MoneyExpr& operator-=(const MoneyExpr& o) { return *this = *this - o; }

  friend bool operator==(const MoneyExpr&, const MoneyExpr&) = default;
  friend bool operator<(const MoneyExpr& a, const MoneyExpr& b) {
    if (a.constant != b.constant) return a.constant < b.constant;
    return a.coeff < b.coeff;
  }
  friend bool operator>(const MoneyExpr& a, const MoneyExpr& b) { return b < a; }
  friend bool operator<=(const MoneyExpr& a, const MoneyExpr& b) { return !(b < a); }
  friend bool operator>=(const MoneyExpr& a, const MoneyExpr& b) { return !(a < b); }

  int sign() const {
    if (constant.sign() != 0) return constant.sign();
    return coeff.sign();
  }

  Rational eval_at(const Rational& epsilon) const {
    return constant + coeff * epsilon;
  }

  // "0", "10+e", "-5+3e", "(5/3)e", "-5-(1/2)e", "7".
  std::string str() const {
    if (coeff.is_zero()) return constant.str();
    std::string out;
    bool lead = constant.is_zero();
    if (!lead) out = constant.str();
    Rational c = coeff;
    if (c.sign() < 0) {
      out += '-';
      c = -c;
    } else if (!lead) {
      out += '+';
    }
    if (c != Rational(1)) {
      if (c.den() == 1)
        out += c.str();
      else
        out += "(" + c.str() + ")";
    }
    out += 'e';
    return out;
  }

  // Inverse of str(); also accepts forms like "e", "-e", "3e", "3/2e".
  static MoneyExpr parse(std::string_view text);
};

}  // namespace sbeauty
