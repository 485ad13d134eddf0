// Exact rationals and rationals extended with -inf/+inf.
//
// Every counter value, interval endpoint and transition update in the
// library is a Rat. There is no floating point anywhere.

#ifndef COCA_RATIONAL_HPP
#define COCA_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace coca {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rat {
public:
  Rat() = default;
  Rat(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : value_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Accepts "7", "-3", "3/2", "-10/4" and terminating decimals "2.25".
  static Rat parse(std::string_view text);
  static std::optional<Rat> try_parse(std::string_view text);

  const mpq_class& raw() const { return value_; }
  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  Rat abs() const { return Rat(mpq_class(::abs(value_))); }

  /// "5", "-7/2".
  std::string str() const;

  Rat operator-() const { return Rat(mpq_class(-value_)); }
  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

/// A rational or one of the two infinities.
class Ext {
public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  Ext() = default;
  Ext(Rat v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  Ext(long v) : Ext(Rat(v)) {}                               // NOLINT
  Ext(int v) : Ext(Rat(v)) {}                                // NOLINT

  static Ext neg_inf() { return Ext(Kind::NegInf); }
  static Ext pos_inf() { return Ext(Kind::PosInf); }

  /// Accepts everything Rat::parse accepts plus "inf", "+inf", "-inf".
  static Ext parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  /// Requires is_finite().
  const Rat& value() const;

  std::string str() const;

  Ext operator-() const;
  /// Infinities absorb finite offsets.
  Ext operator+(const Rat& r) const;
  Ext operator-(const Rat& r) const { return *this + (-r); }

  friend bool operator==(const Ext& a, const Ext& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Ext& a, const Ext& b);

private:
  explicit Ext(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rat value_;
};

std::ostream& operator<<(std::ostream& os, const Ext& e);

Ext min(const Ext& a, const Ext& b);
Ext max(const Ext& a, const Ext& b);

}  // namespace coca

template <>
struct std::hash<coca::Rat> {
  std::size_t operator()(const coca::Rat& r) const { return r.hash(); }
};

#endif  // COCA_RATIONAL_HPP
