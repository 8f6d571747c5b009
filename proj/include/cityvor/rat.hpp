#pragma once
// Exact rational scalar type plus text parsing/formatting helpers.
//
// All coordinates and distances in this library are exact rationals backed by
// GMP.  Numeric text is parsed as "123", "-4/7" or "2.5" -- never through a
// binary floating-point intermediate -- and formatted back so that it parses
// to the identical value.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cityvor {

using Rat = mpq_class;

inline Rat rat(long n) { return Rat(n); }

inline Rat rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline int sgn(const Rat& q) { return sgn(q.get_num()); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Procedure: rat_parse
// Accepts optional sign, then digits, digits/digits or digits.digits.
// Returns nullopt for anything else (including a zero denominator).
inline std::optional<Rat> rat_parse(std::string_view text) {
  size_t i = 0, n = text.size();
  while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
  while (n > i && (text[n - 1] == ' ' || text[n - 1] == '\t')) --n;
  if (i >= n) return std::nullopt;

  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  auto digits = [&](size_t& k) {
    size_t start = k;
    while (k < n && text[k] >= '0' && text[k] <= '9') ++k;
    return k > start;
  };

  size_t j = i;
  if (!digits(j)) return std::nullopt;
  std::string intpart(text.substr(i, j - i));

  Rat value;
  if (j < n && text[j] == '/') {
    size_t k = ++j;
    if (!digits(j) || j != n) return std::nullopt;
    std::string den(text.substr(k, j - k));
    mpz_class d(den, 10);
    if (d == 0) return std::nullopt;
    value = Rat(mpz_class(intpart, 10), d);
    value.canonicalize();
  } else if (j < n && text[j] == '.') {
    size_t k = ++j;
    if (!digits(j) || j != n) return std::nullopt;
    std::string frac(text.substr(k, j - k));
    mpz_class scale = 1;
    for (size_t t = 0; t < frac.size(); ++t) scale *= 10;
    value = Rat(mpz_class(intpart, 10) * scale + mpz_class(frac, 10), scale);
    value.canonicalize();
  } else {
    if (j != n) return std::nullopt;
    value = Rat(mpz_class(intpart, 10));
  }
  return neg ? Rat(-value) : value;
}

// Procedure: rat_str
// Integer when the denominator is 1, a short exact decimal when the
// denominator divides a power of ten, otherwise "num/den".
inline std::string rat_str(const Rat& q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (den == 1) return num.get_str();

  mpz_class d = den;
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
    ++fives;
  }
  if (d == 1 && twos <= 40 && fives <= 40) {
    unsigned places = twos > fives ? twos : fives;
    mpz_class scale = 1;
    for (unsigned t = 0; t < places; ++t) scale *= 10;
    mpz_class scaled = num * scale / den;  // exact by construction
    bool negative = scaled < 0;
    mpz_class mag = negative ? mpz_class(-scaled) : scaled;
    std::string digits = mag.get_str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    return negative ? "-" + digits : digits;
  }
  return num.get_str() + "/" + den.get_str();
}

// Deterministic pseudo-random generator (splitmix64).  Used instead of the
// standard distributions so that generated instances are identical across
// compilers and platforms.
struct Rng {
  unsigned long long state;

  explicit Rng(unsigned long long seed) : state(seed) {}

  unsigned long long next() {
    unsigned long long z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Slight modulo bias is irrelevant here; determinism is
  // what matters.
  unsigned long long below(unsigned long long n) { return next() % n; }

  long range(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<unsigned long long>(hi - lo + 1)));
  }
};

}  // namespace cityvor
