#include "koszulkit/field.hpp"

#include <charconv>

namespace koszulkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw FieldError("not a supported prime: " + std::to_string(p));
  return Field(p);
}

Field Field::parse(std::string_view s) {
  if (s == "QQ" || s == "Q") return rationals();
  std::string_view digits;
  if (s.rfind("Fp:", 0) == 0)
    digits = s.substr(3);
  else if (s.size() > 1 && s[0] == 'F')
    digits = s.substr(1);
  else
    throw FieldError("unknown field '" + std::string(s) + "'");
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || p >= (1ull << 31))
    throw FieldError("bad field modulus in '" + std::string(s) + "'");
  return prime(static_cast<std::uint32_t>(p));
}

std::string Field::name() const {
  if (p_ == 0) return "QQ";
  return "F" + std::to_string(p_);
}

namespace {

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // a^(p-2)
  std::uint64_t base = a, res = 1;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) res = res * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(res);
}

std::uint32_t reduce_signed(long v, std::uint32_t p) {
  long r = v % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

FieldElement FieldElement::make_q(mpq_class v) {
  FieldElement e;
  e.tag_ = kRational;
  if (v != 0) e.q_ = std::make_shared<const mpq_class>(std::move(v));
  return e;
}

FieldElement::FieldElement(const Field& f, long v) {
  if (f.is_rational()) {
    *this = make_q(mpq_class(v));
  } else {
    tag_ = f.characteristic();
    r_ = reduce_signed(v, tag_);
  }
}

FieldElement::FieldElement(const Field& f, const mpq_class& v) {
  if (f.is_rational()) {
    mpq_class c(v);
    c.canonicalize();
    *this = make_q(std::move(c));
    return;
  }
  std::uint32_t p = f.characteristic();
  std::uint32_t den = reduce_mpz(v.get_den(), p);
  if (den == 0) throw FieldError("denominator vanishes in " + f.name());
  tag_ = p;
  r_ = static_cast<std::uint32_t>(
      static_cast<std::uint64_t>(reduce_mpz(v.get_num(), p)) * mod_inverse(den, p) % p);
}

FieldElement FieldElement::from_string(const Field& f, std::string_view s) {
  mpq_class v;
  if (v.set_str(std::string(s), 10) != 0) throw FieldError("bad coefficient '" + std::string(s) + "'");
  if (v.get_den() == 0) throw FieldError("division by zero in coefficient");
  v.canonicalize();
  return FieldElement(f, v);
}

bool FieldElement::is_zero() const {
  if (tag_ == kRational) return !q_;
  return r_ == 0;
}

bool FieldElement::is_one() const {
  if (tag_ == kUnbound) return false;
  if (tag_ == kRational) return q_ && *q_ == 1;
  return r_ == 1;
}

Field FieldElement::field() const {
  if (tag_ == kUnbound) throw FieldError("field of an unbound zero");
  if (tag_ == kRational) return Field::rationals();
  return Field::prime(tag_);
}

const mpq_class& FieldElement::rational() const {
  static const mpq_class zero(0);
  if (tag_ == kUnbound) return zero;
  if (tag_ != kRational) throw FieldError("rational() on a prime-field element");
  return q_ ? *q_ : zero;
}

std::uint32_t FieldElement::join(const FieldElement& b) const {
  if (tag_ == b.tag_) return tag_;
  if (tag_ == kUnbound) return b.tag_;
  if (b.tag_ == kUnbound) return tag_;
  throw FieldError("mixed-field operands");
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
  std::uint32_t t = join(b);
  if (tag_ == kUnbound) return b;
  if (b.tag_ == kUnbound) return *this;
  if (t == kRational) {
    if (!q_) return b;
    if (!b.q_) return *this;
    return make_q(*q_ + *b.q_);
  }
  std::uint32_t s = r_ + b.r_;
  if (s >= t) s -= t;
  return make_mod(t, s);
}

FieldElement FieldElement::operator-() const {
  if (tag_ == kUnbound) return *this;
  if (tag_ == kRational) return q_ ? make_q(-*q_) : *this;
  return make_mod(tag_, r_ == 0 ? 0 : tag_ - r_);
}

FieldElement FieldElement::operator-(const FieldElement& b) const { return *this + (-b); }

FieldElement FieldElement::operator*(const FieldElement& b) const {
  std::uint32_t t = join(b);
  if (tag_ == kUnbound || b.tag_ == kUnbound) {
    FieldElement z;
    z.tag_ = t;
    return z;
  }
  if (t == kRational) {
    if (!q_ || !b.q_) return make_q(mpq_class(0));
    return make_q(*q_ * *b.q_);
  }
  return make_mod(t, static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * b.r_ % t));
}

FieldElement FieldElement::inverse() const {
  if (is_zero() || tag_ == kUnbound) throw FieldError("division by zero");
  if (tag_ == kRational) return make_q(1 / *q_);
  return make_mod(tag_, mod_inverse(r_, tag_));
}

FieldElement FieldElement::operator/(const FieldElement& b) const {
  join(b);
  return *this * b.inverse();
}

bool FieldElement::operator==(const FieldElement& b) const {
  std::uint32_t t = join(b);
  if (tag_ == kUnbound || b.tag_ == kUnbound) return is_zero() && b.is_zero();
  if (t == kRational) {
    if (!q_ || !b.q_) return !q_ && !b.q_;
    return *q_ == *b.q_;
  }
  return r_ == b.r_;
}

std::string FieldElement::to_string() const {
  if (tag_ == kUnbound) return "0";
  if (tag_ == kRational) return q_ ? q_->get_str() : "0";
  return std::to_string(r_);
}

}  // namespace koszulkit
