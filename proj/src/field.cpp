#include "permlab/field.hpp"

#include <sstream>

namespace permlab {

namespace detail {

struct FieldData {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::vector<Value> modulus;  // c_0..c_k, monic
  Value generator = 0;
  // Extension fields only.
  std::vector<std::uint32_t> log;   // log[a], a != 0
  std::vector<Value> exp;           // exp[i], i in [0, 2(q-1))
  std::vector<std::uint32_t> zech;  // log(1 + g^d), or kNoLog when 1 + g^d = 0
  std::vector<Value> neg;
};

}  // namespace detail

namespace {

constexpr std::uint32_t kNoLog = 0xffffffffu;

using Poly = std::vector<Value>;  // low-to-high coefficients over F_p

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Poly digits(std::uint32_t code, std::uint32_t p, std::uint32_t len) {
  Poly out(len, 0);
  for (std::uint32_t i = 0; i < len; ++i) {
    out[i] = code % p;
    code /= p;
  }
  return out;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is a small prime here; Fermat.
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo monic-or-not divisor d over F_p.
Poly poly_rem(Poly a, const Poly& d, std::uint32_t p) {
  const std::size_t dd = d.size() - 1;
  const std::uint32_t lead_inv = inv_mod(d.back(), p);
  while (a.size() > dd) {
    const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) {
      a[shift + i] = static_cast<Value>((a[shift + i] + std::uint64_t{p - c} * d[i]) % p);
    }
    a.pop_back();
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= k / 2; ++d) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t code = 0; code < count; ++code) {
      Poly g = digits(code, p, d);
      g.push_back(1);
      Poly r = poly_rem(f, g, p);
      bool zero = true;
      for (Value c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

Value poly_mulmod(Value a, Value b, const Poly& modulus, std::uint32_t p) {
  const std::uint32_t k = static_cast<std::uint32_t>(modulus.size() - 1);
  Poly x = digits(a, p, k), y = digits(b, p, k);
  Poly prod(2 * k - 1, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      prod[i + j] = static_cast<Value>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p);
    }
  }
  Poly r = poly_rem(std::move(prod), modulus, p);
  r.resize(k, 0);
  return encode(r, p);
}

Value poly_add(Value a, Value b, std::uint32_t p, std::uint32_t k) {
  Poly x = digits(a, p, k), y = digits(b, p, k);
  for (std::uint32_t i = 0; i < k; ++i) x[i] = (x[i] + y[i]) % p;
  return encode(x, p);
}

std::shared_ptr<detail::FieldData> build_extension(std::uint32_t q, std::uint32_t p, std::uint32_t k) {
  auto d = std::make_shared<detail::FieldData>();
  d->q = q;
  d->p = p;
  d->k = k;
  for (std::uint32_t code = 0; code < q; ++code) {
    Poly f = digits(code, p, k);
    f.push_back(1);
    if (is_irreducible(f, p)) {
      d->modulus = std::move(f);
      break;
    }
  }

  const std::uint32_t order = q - 1;
  for (Value g = 1; g < q; ++g) {
    Value x = g;
    std::uint32_t e = 1;
    while (x != 1) {
      x = poly_mulmod(x, g, d->modulus, p);
      ++e;
    }
    if (e == order) {
      d->generator = g;
      break;
    }
  }

  d->exp.assign(2 * order, 0);
  d->log.assign(q, kNoLog);
  Value x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    d->exp[i] = x;
    d->exp[i + order] = x;
    d->log[x] = i;
    x = poly_mulmod(x, d->generator, d->modulus, p);
  }
  d->zech.assign(order, kNoLog);
  for (std::uint32_t i = 0; i < order; ++i) {
    const Value s = poly_add(1, d->exp[i], p, k);
    d->zech[i] = s == 0 ? kNoLog : d->log[s];
  }
  d->neg.assign(q, 0);
  for (Value a = 0; a < q; ++a) {
    Poly c = digits(a, p, k);
    for (auto& ci : c) ci = ci == 0 ? 0 : p - ci;
    d->neg[a] = encode(c, p);
  }
  return d;
}

}  // namespace

Field::Field(std::shared_ptr<const detail::FieldData> data)
    : data_(std::move(data)), q_(data_->q), p_(data_->p), k_(data_->k) {}

PrimePower factor_prime_power(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::NotAPrimePower, "field order must be >= 2, got " + std::to_string(q));
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;  // q itself is prime
  std::uint64_t rest = q;
  std::uint32_t k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1 || !is_prime_number(p)) {
    throw Error(ErrorCode::NotAPrimePower, std::to_string(q) + " is not a prime power");
  }
  return {p, k};
}

Field Field::make(std::uint64_t q) {
  const auto [p, k] = factor_prime_power(q);
  if (k == 1) {
    if (q > kMaxPrime) throw Error(ErrorCode::SizeCap, "prime field order must be < 2^31");
    auto d = std::make_shared<detail::FieldData>();
    d->q = d->p = static_cast<std::uint32_t>(q);
    d->k = 1;
    d->modulus = {0, 1};
    return Field(std::move(d));
  }
  if (q > kMaxExtensionOrder) {
    throw Error(ErrorCode::TableCapExceeded,
                "extension field order " + std::to_string(q) + " exceeds table cap 4096");
  }
  return Field(build_extension(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(p), k));
}

const std::vector<Value>& Field::modulus() const { return data_->modulus; }

Value Field::generator() const { return data_->generator; }

Value Field::inv(Value a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + describe());
  if (k_ == 1) return inv_mod(a, p_);
  const auto& d = *data_;
  return d.exp[(q_ - 1) - d.log[a]];
}

Value Field::from_int(std::int64_t m) const noexcept {
  std::int64_t r = m % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  // The prime subfield is {0, 1, ..., p-1} in both representations.
  return static_cast<Value>(r);
}

Value Field::ext_add(Value a, Value b) const noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const auto& d = *data_;
  const std::uint32_t la = d.log[a], lb = d.log[b];
  const std::uint32_t diff = lb >= la ? lb - la : lb + (q_ - 1) - la;
  const std::uint32_t z = d.zech[diff];
  if (z == kNoLog) return 0;
  return d.exp[la + z];
}

Value Field::ext_neg(Value a) const noexcept { return data_->neg[a]; }

Value Field::ext_mul(Value a, Value b) const noexcept {
  if (a == 0 || b == 0) return 0;
  const auto& d = *data_;
  return d.exp[d.log[a] + d.log[b]];
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) os << " (p=" << p_ << ", k=" << k_ << ")";
  return os.str();
}

FieldElem::FieldElem(Field field, Value value) : field_(std::move(field)), value_(value) {
  if (!field_.contains(value)) {
    throw Error(ErrorCode::OutOfRange,
                "value " + std::to_string(value) + " not in " + field_.describe());
  }
}

namespace {
void require_same(const FieldElem& a, const FieldElem& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::FieldMismatch,
                "cannot combine " + a.field().describe() + " with " + b.field().describe());
  }
}
}  // namespace

FieldElem add(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field().add(a.value(), b.value()));
}
FieldElem sub(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field().sub(a.value(), b.value()));
}
FieldElem mul(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field().mul(a.value(), b.value()));
}
FieldElem neg(const FieldElem& a) { return FieldElem(a.field(), a.field().neg(a.value())); }
FieldElem inv(const FieldElem& a) { return FieldElem(a.field(), a.field().inv(a.value())); }

}  // namespace permlab
