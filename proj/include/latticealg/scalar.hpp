#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latticealg {

/// Exact rational scalar. GMP keeps values canonical after arithmetic; parse()
/// canonicalizes explicitly.
using Scalar = mpq_class;

/// Raised for malformed input (bad rational strings, unknown names, broken
/// files). Distinct from mathematical violations, which are reported as data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's hypotheses do not hold for the given input (e.g. spectrum
/// of an element in an algebra without identity).
class Inapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError: public std::invalid_argument {
 public:
  DimensionError(std::size_t expected, std::size_t got)
      : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(got)) {}
};

inline void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionError(expected, got);
}

/// Parses "num/den" or "num". Accepts U+2212 as a minus sign.
inline Scalar parse_scalar(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN in UTF-8
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (text[i] != ' ') s.push_back(text[i]);
  }
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const std::string_view sv{s};
  const auto num = sv.substr(0, slash);
  const auto den = slash == std::string::npos ? std::string_view{"1"} : sv.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InputError("malformed rational: '" + std::string(text) + "'");
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// Canonical "num/den" form; integers omit the denominator.
inline std::string format_scalar(Scalar q) {
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Scalar abs(const Scalar& q) { return ::abs(q); }

inline long double to_long_double(const Scalar& q) {
  // mpq_get_d truncates; good to ~1 ulp of double which is all callers need.
  return static_cast<long double>(q.get_d());
}

/// A real value known only approximately: |true - value| <= error.
struct RealApprox {
  long double value = 0;
  long double error = 0;
};

/// Result of a norm evaluation: exact when the norm kind allows it.
struct NormValue {
  bool exact = true;
  Scalar value;          // valid when exact
  RealApprox approx;     // always filled

  static NormValue of(Scalar q) {
    NormValue v;
    v.approx = {to_long_double(q), 0};
    v.value = std::move(q);
    return v;
  }
  static NormValue real(long double x, long double err) {
    NormValue v;
    v.exact = false;
    v.approx = {x, err};
    return v;
  }
  long double as_real() const { return approx.value; }
};

}  // namespace latticealg
