#include "kslab/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "kslab/error.hpp"

namespace kslab {

namespace {

Rational::wide gcd128(Rational::wide a, Rational::wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Rational::wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr Rational::wide kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("Rational: zero denominator");
  auto r = make(num, den);
  if (!r) throw InvalidInput("Rational: overflow");
  *this = *r;
}

std::optional<Rational> Rational::make(Rational::wide num, Rational::wide den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Rational::wide g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < -kMax || den > kMax) return std::nullopt;
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::optional<Rational> Rational::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  for (std::int64_t d = 1; d <= max_den; ++d) {
    const double scaled = x * static_cast<double>(d);
    if (std::fabs(scaled) > 9.0e15) return std::nullopt;
    const double n = std::nearbyint(scaled);
    if (n / static_cast<double>(d) == x) return make(static_cast<Rational::wide>(n), d);
  }
  return std::nullopt;
}

std::optional<Rational> add(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Rational::wide>(a.num_) * b.den_ + static_cast<Rational::wide>(b.num_) * a.den_,
                        static_cast<Rational::wide>(a.den_) * b.den_);
}

std::optional<Rational> sub(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Rational::wide>(a.num_) * b.den_ - static_cast<Rational::wide>(b.num_) * a.den_,
                        static_cast<Rational::wide>(a.den_) * b.den_);
}

std::optional<Rational> mul(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<Rational::wide>(a.num_) * b.num_, static_cast<Rational::wide>(a.den_) * b.den_);
}

std::optional<Rational> div(const Rational& a, const Rational& b) {
  if (b.num_ == 0) return std::nullopt;
  return Rational::make(static_cast<Rational::wide>(a.num_) * b.den_, static_cast<Rational::wide>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<Rational::wide>(a.num_) * b.den_ < static_cast<Rational::wide>(b.num_) * a.den_;
}

}  // namespace kslab
