#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pvsynth {

/// Non-negative exact rational, used for fractions that scale Money
/// (installation share, discount rate). Always stored reduced.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den);

  /// Parses "0.05", "1", "0.125" or "1/3". Rejects signs and exponents.
  static Ratio parse(std::string_view decimal);
  /// Shortest round-trip decimal form of `value`, read back exactly.
  static Ratio from_double(double value);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "0.05" when the decimal expansion terminates, else "n/d". Parses back exactly.
  std::string to_string() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// US-dollar amount as an integer count of cents.
class Money {
 public:
  constexpr Money() = default;
  static Money from_cents(std::int64_t cents);
  /// Strict "dollars[.c[c]]" form, e.g. "249.90". No sign, no separators.
  static Money parse(std::string_view text);

  constexpr std::int64_t cents() const noexcept { return cents_; }
  /// "249.90"
  std::string to_string() const;
  /// "US$ 2,465.85"
  std::string to_display() const;

  Money& operator+=(Money other);
  friend Money operator+(Money a, Money b) { return a += b; }
  /// a - b; throws DomainError if the result would be negative.
  friend Money operator-(Money a, Money b);
  friend Money operator*(Money a, std::int64_t count);
  friend Money operator*(std::int64_t count, Money a) { return a * count; }

  friend constexpr auto operator<=>(const Money&, const Money&) = default;

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

/// amount * factor, rounded half-up to the cent.
Money scale(Money amount, const Ratio& factor);

}  // namespace pvsynth
