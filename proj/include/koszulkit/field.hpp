#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace koszulkit {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficient field: F_p for a prime p < 2^31, or Q (p == 0).
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);
  // "QQ", "F2", "F32003", "Fp:<prime>"
  static Field parse(std::string_view s);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

constexpr std::uint32_t kDefaultPrime = 32003;

bool is_prime(std::uint64_t n);

class FieldElement {
 public:
  // An unbound zero; adopts the field of whatever it is combined with.
  FieldElement() = default;
  FieldElement(const Field& f, long v);
  FieldElement(const Field& f, const mpq_class& v);
  static FieldElement from_string(const Field& f, std::string_view s);

  bool is_zero() const;
  bool is_one() const;
  bool bound() const { return tag_ != kUnbound; }
  Field field() const;

  // Residue in [0, p) for prime fields.
  std::uint32_t residue() const { return r_; }
  // Exact value over Q; throws for prime fields.
  const mpq_class& rational() const;

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator/(const FieldElement& b) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

  bool operator==(const FieldElement& b) const;
  bool operator!=(const FieldElement& b) const { return !(*this == b); }

  std::string to_string() const;

 private:
  static constexpr std::uint32_t kUnbound = 0xffffffffu;
  static constexpr std::uint32_t kRational = 0;
  // tag_: kUnbound, kRational, or the prime p
  std::uint32_t tag_ = kUnbound;
  std::uint32_t r_ = 0;
  std::shared_ptr<const mpq_class> q_;

  std::uint32_t join(const FieldElement& b) const;
  static FieldElement make_mod(std::uint32_t p, std::uint32_t r) {
    FieldElement e;
    e.tag_ = p;
    e.r_ = r;
    return e;
  }
  static FieldElement make_q(mpq_class v);
};

}  // namespace koszulkit
