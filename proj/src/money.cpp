#include "pvsynth/money.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "pvsynth/errors.hpp"

namespace pvsynth {

namespace {

constexpr std::int64_t kMaxCents = std::numeric_limits<std::int64_t>::max() / 4;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::int64_t parse_uint(std::string_view s, std::string_view context) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError("cannot parse '" + std::string(context) + "'");
  return value;
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (num < 0 || den <= 0) throw DomainError("ratio must be non-negative with positive denominator");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::parse(std::string_view decimal) {
  if (const auto slash = decimal.find('/'); slash != std::string_view::npos) {
    const auto n = decimal.substr(0, slash), d = decimal.substr(slash + 1);
    if (n.empty() || d.empty() || !all_digits(n) || !all_digits(d))
      throw DomainError("not a fraction: '" + std::string(decimal) + "'");
    const std::int64_t den = parse_uint(d, decimal);
    if (den == 0) throw DomainError("zero denominator: '" + std::string(decimal) + "'");
    return Ratio(parse_uint(n, decimal), den);
  }
  const auto dot = decimal.find('.');
  const std::string_view whole = decimal.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : decimal.substr(dot + 1);
  if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac)) || frac.size() > 12)
    throw DomainError("not a plain decimal: '" + std::string(decimal) + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t w = parse_uint(whole, decimal);
  const std::int64_t f = frac.empty() ? 0 : parse_uint(frac, decimal);
  if (w > std::numeric_limits<std::int64_t>::max() / den - 1)
    throw DomainError("decimal out of range: '" + std::string(decimal) + "'");
  return Ratio(w * den + f, den);
}

Ratio Ratio::from_double(double value) {
  if (!(value >= 0.0)) throw DomainError("ratio must be non-negative");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) throw DomainError("ratio out of range");
  return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string Ratio::to_string() const {
  // Terminates iff den has no prime factors besides 2 and 5.
  std::int64_t rest = den_;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) rest /= 2, ++twos;
  while (rest % 5 == 0) rest /= 5, ++fives;
  const int digits = std::max(twos, fives);
  if (rest != 1 || digits > 12) return std::to_string(num_) + "/" + std::to_string(den_);

  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const std::int64_t frac = num_ % den_ * (scale / den_);
  std::string s = std::to_string(num_ / den_);
  if (digits == 0) return s;
  std::string f = std::to_string(frac);
  return s + "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
}

Money Money::from_cents(std::int64_t cents) {
  if (cents < 0) throw DomainError("money must be non-negative");
  if (cents > kMaxCents) throw DomainError("money out of range");
  return Money(cents);
}

Money Money::parse(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view dollars = text.substr(0, dot);
  const std::string_view cents = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (!all_digits(dollars) || (dot != std::string_view::npos && (!all_digits(cents) || cents.size() > 2)))
    throw DomainError("not a dollars.cents amount: '" + std::string(text) + "'");
  if (dollars.size() > 15) throw DomainError("money out of range: '" + std::string(text) + "'");
  std::int64_t c = parse_uint(dollars, text) * 100;
  if (cents.size() == 1) c += parse_uint(cents, text) * 10;
  if (cents.size() == 2) c += parse_uint(cents, text);
  return from_cents(c);
}

std::string Money::to_string() const {
  std::string frac = std::to_string(cents_ % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(cents_ / 100) + "." + frac;
}

std::string Money::to_display() const {
  std::string whole = std::to_string(cents_ / 100);
  for (int i = static_cast<int>(whole.size()) - 3; i > 0; i -= 3) whole.insert(static_cast<std::size_t>(i), ",");
  std::string s = to_string();
  return "US$ " + whole + s.substr(s.find('.'));
}

Money& Money::operator+=(Money other) {
  if (cents_ > kMaxCents - other.cents_) throw DomainError("money overflow");
  cents_ += other.cents_;
  return *this;
}

Money operator-(Money a, Money b) {
  if (b.cents_ > a.cents_) throw DomainError("money difference would be negative");
  return Money(a.cents_ - b.cents_);
}

Money operator*(Money a, std::int64_t count) {
  if (count < 0) throw DomainError("negative multiplier");
  if (count != 0 && a.cents_ > kMaxCents / count) throw DomainError("money overflow");
  return Money(a.cents_ * count);
}

Money scale(Money amount, const Ratio& factor) {
  // floor((2·a·n + d) / 2d) is round-half-up for non-negative operands.
  const __int128 a = amount.cents();
  const __int128 n = factor.num();
  const __int128 d = factor.den();
  const __int128 q = (2 * a * n + d) / (2 * d);
  if (q > kMaxCents) throw DomainError("money overflow");
  return Money::from_cents(static_cast<std::int64_t>(q));
}

}  // namespace pvsynth
