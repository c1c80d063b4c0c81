#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "permlab/error.hpp"

namespace permlab {

/// Canonical element index in {0, ..., q-1}. For prime fields this is the
/// residue; for q = p^k it is the base-p encoding sum_i c_i p^i of the
/// polynomial representative c_0 + c_1 x + ... + c_{k-1} x^{k-1}.
using Value = std::uint32_t;

struct PrimePower {
  std::uint64_t p;
  std::uint32_t k;
};

/// q = p^k with p prime; throws NotAPrimePower.
PrimePower factor_prime_power(std::uint64_t q);

namespace detail {
struct FieldData;
}

/// A finite field F_q, q = p^k. Cheap to copy; all copies share immutable
/// tables, so a Field can be handed to any number of threads.
///
/// Extension fields are reduced modulo the lowest monic irreducible of degree
/// k, where "lowest" orders candidates x^k + c_{k-1}x^{k-1} + ... + c_0 by the
/// integer sum_i c_i p^i. Multiplication and addition go through exp/log/Zech
/// tables generated by the smallest primitive element (again by encoding).
class Field {
 public:
  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;
  static constexpr std::uint32_t kMaxExtensionOrder = 4096;

  /// Throws NotAPrimePower or TableCapExceeded.
  static Field make(std::uint64_t q);

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t k() const noexcept { return k_; }
  bool is_prime() const noexcept { return k_ == 1; }

  /// Coefficients c_0..c_k of the reduction polynomial (c_k = 1); {0, 1} for
  /// prime fields (the polynomial x).
  const std::vector<Value>& modulus() const;
  /// Primitive element generating the log tables; 0 for prime fields.
  Value generator() const;

  bool contains(Value a) const noexcept { return a < q_; }

  Value add(Value a, Value b) const noexcept {
    if (k_ == 1) {
      Value s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return ext_add(a, b);
  }
  Value neg(Value a) const noexcept {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return ext_neg(a);
  }
  Value sub(Value a, Value b) const noexcept { return add(a, neg(b)); }
  Value mul(Value a, Value b) const noexcept {
    if (k_ == 1) return static_cast<Value>((std::uint64_t{a} * b) % p_);
    return ext_mul(a, b);
  }
  /// Throws DivisionByZero on 0.
  Value inv(Value a) const;
  /// Image of the integer m under Z -> F_q.
  Value from_int(std::int64_t m) const noexcept;

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.q_ == b.q_; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data);

  Value ext_add(Value a, Value b) const noexcept;
  Value ext_neg(Value a) const noexcept;
  Value ext_mul(Value a, Value b) const noexcept;

  std::shared_ptr<const detail::FieldData> data_;
  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
};

/// An element bound to its field. Mixing elements of different fields throws
/// FieldMismatch.
class FieldElem {
 public:
  /// Throws OutOfRange if value >= q.
  FieldElem(Field field, Value value);

  Value value() const noexcept { return value_; }
  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  Field field_;
  Value value_;
};

FieldElem add(const FieldElem& a, const FieldElem& b);
FieldElem sub(const FieldElem& a, const FieldElem& b);
FieldElem mul(const FieldElem& a, const FieldElem& b);
FieldElem neg(const FieldElem& a);
FieldElem inv(const FieldElem& a);

inline FieldElem operator+(const FieldElem& a, const FieldElem& b) { return add(a, b); }
inline FieldElem operator-(const FieldElem& a, const FieldElem& b) { return sub(a, b); }
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) { return mul(a, b); }
inline FieldElem operator-(const FieldElem& a) { return neg(a); }

}  // namespace permlab
