#pragma once

#include <cstdint>
#include <optional>

namespace kslab {

/// Exact rational with 64-bit numerator/denominator. Arithmetic returns
/// nullopt on overflow so callers can fall back to floating point.
class Rational {
 public:
  __extension__ typedef __int128 wide;

  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  static Rational integer(std::int64_t v) { return Rational(v, 1); }

  /// Recovers n/d with d <= max_den when the double is exactly that ratio
  /// rounded to nearest.
  static std::optional<Rational> from_double(double x, std::int64_t max_den = 4096);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend std::optional<Rational> add(const Rational& a, const Rational& b);
  friend std::optional<Rational> sub(const Rational& a, const Rational& b);
  friend std::optional<Rational> mul(const Rational& a, const Rational& b);
  friend std::optional<Rational> div(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  static std::optional<Rational> make(wide num, wide den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace kslab
