#include "coca/rational.hpp"

#include "coca/error.hpp"

#include <cctype>
#include <functional>

namespace coca {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Optional leading sign followed by digits.
bool is_signed_digits(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return is_digits(s);
}

mpz_class parse_int(std::string_view s) {
  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  mpz_class v(std::string(s), 10);
  return neg ? mpz_class(-v) : v;
}

}  // namespace

Rat::Rat(long num, long den) : value_(num, den) {
  if (den == 0) throw Error("rational with zero denominator");
  value_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::optional<Rat> Rat::try_parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto n = text.substr(0, slash);
    const auto d = text.substr(slash + 1);
    if (!is_signed_digits(n) || !is_digits(d)) return std::nullopt;
    mpz_class den = parse_int(d);
    if (den == 0) return std::nullopt;
    return Rat(mpq_class(parse_int(n), den));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    auto ip = text.substr(0, dot);
    const auto fp = text.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) {
      neg = ip.front() == '-';
      ip.remove_prefix(1);
    }
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp))) {
      return std::nullopt;
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    mpz_class whole = ip.empty() ? mpz_class(0) : parse_int(ip);
    mpz_class frac = fp.empty() ? mpz_class(0) : parse_int(fp);
    mpz_class num = whole * scale + frac;
    if (neg) num = -num;
    return Rat(mpq_class(num, scale));
  }
  if (!is_signed_digits(text)) return std::nullopt;
  return Rat(mpq_class(parse_int(text)));
}

Rat Rat::parse(std::string_view text) {
  if (auto r = try_parse(text)) return *r;
  throw ParseError("invalid rational '" + std::string(text) + "'");
}

std::string Rat::str() const { return value_.get_str(10); }

std::size_t Rat::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(value_.get_num().get_str(16));
  const std::size_t h2 = std::hash<std::string>{}(value_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

const Rat& Ext::value() const {
  if (!is_finite()) throw Error("value() of an infinite endpoint");
  return value_;
}

Ext Ext::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  return Ext(Rat::parse(text));
}

std::string Ext::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: break;
  }
  return value_.str();
}

Ext Ext::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    case Kind::Finite: break;
  }
  return Ext(-value_);
}

Ext Ext::operator+(const Rat& r) const {
  if (!is_finite()) return *this;
  return Ext(value_ + r);
}

std::strong_ordering operator<=>(const Ext& a, const Ext& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != Ext::Kind::Finite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const Ext& e) { return os << e.str(); }

Ext min(const Ext& a, const Ext& b) { return b < a ? b : a; }
Ext max(const Ext& a, const Ext& b) { return a < b ? b : a; }

}  // namespace coca
