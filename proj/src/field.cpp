#include "pal/field.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace pal {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegreeMismatch: return "degree-mismatch";
    case ErrorKind::Reducible: return "reducible-modulus";
    case ErrorKind::OwnerMismatch: return "owner-mismatch";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::AmbientMismatch: return "ambient-mismatch";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::NotArc: return "not-arc";
    case ErrorKind::NotSpread: return "not-spread";
    case ErrorKind::NotRegular: return "not-regular";
    case ErrorKind::KindMismatch: return "kind-mismatch";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

int poly_degree(std::uint32_t poly) {
  int d = -1;
  while (poly) {
    poly >>= 1;
    ++d;
  }
  return d;
}

namespace {

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= m << (d - dm);
  return a;
}

std::uint32_t smallest_irreducible(int m) {
  for (std::uint32_t poly = 1u << m; poly < (2u << m); ++poly) {
    if (is_irreducible_gf2(poly)) return poly;
  }
  fail(ErrorKind::Internal, "no irreducible polynomial found");
}

bool is_small_prime(int p) {
  static constexpr std::array<int, 6> primes{2, 3, 5, 7, 11, 13};
  return std::find(primes.begin(), primes.end(), p) != primes.end();
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  if (d == 1) return true;
  for (std::uint32_t f = 2; poly_degree(f) <= d / 2; ++f) {
    if (poly_mod(poly, f) == 0) return false;
  }
  return true;
}

std::uint32_t default_modulus(int m) {
  require(m >= 1 && m <= kMaxFieldDegree, ErrorKind::InvalidArgument,
          "field degree must lie in [1, 16], got " + std::to_string(m));
  switch (m) {
    case 1: return 0b10;              // x
    case 2: return 0b111;             // x^2+x+1
    case 3: return 0b1011;            // x^3+x+1
    case 4: return 0b10011;           // x^4+x+1
    case 6: return 0b1011011;         // x^6+x^4+x^3+x+1
    case 8: return 0b100011101;       // x^8+x^4+x^3+x^2+1
    case 9: return 0b1000010001;      // x^9+x^4+1
    case 12: return 0b1000001010011;  // x^12+x^6+x^4+x+1
    default: return smallest_irreducible(m);
  }
}

Field::Field(int p, int m, std::uint32_t modulus)
    : p_(p), m_(m), modulus_(modulus), size_(p == 2 ? (Code{1} << m) : Code(p)) {
  build_tables();
}

FieldPtr Field::make(int m, std::optional<std::uint32_t> modulus) {
  require(m >= 1 && m <= kMaxFieldDegree, ErrorKind::InvalidArgument,
          "field degree must lie in [1, 16], got " + std::to_string(m));
  const std::uint32_t mod = modulus.value_or(default_modulus(m));
  require(poly_degree(mod) == m, ErrorKind::DegreeMismatch,
          "modulus degree " + std::to_string(poly_degree(mod)) + " does not match m = " +
              std::to_string(m));
  require(is_irreducible_gf2(mod), ErrorKind::Reducible, "modulus is reducible over F_2");
  return FieldPtr(new Field(2, m, mod));
}

FieldPtr Field::prime(int p) {
  require(is_small_prime(p), ErrorKind::InvalidArgument,
          "prime fields are supported for p in {2,3,5,7,11,13}, got " + std::to_string(p));
  if (p == 2) return make(1);
  return FieldPtr(new Field(p, 1, 0b10));
}

Code Field::mul_slow(Code a, Code b) const noexcept {
  if (p_ != 2) return (a * b) % size_;
  std::uint32_t acc = 0;
  for (int i = 0; i < m_; ++i) {
    if (b & (1u << i)) acc ^= a << i;
  }
  return poly_mod(acc, modulus_);
}

void Field::build_tables() {
  const Code order = size_ - 1;
  log_.assign(size_, 0);
  exp_.assign(2 * order, 0);
  // First element of full multiplicative order.
  for (Code g = 1; g < size_; ++g) {
    Code x = 1;
    bool primitive = true;
    for (Code k = 0; k < order; ++k) {
      if (k > 0 && x == 1) {
        primitive = false;
        break;
      }
      exp_[k] = x;
      x = mul_slow(x, g);
    }
    if (primitive && x == 1) break;
  }
  for (Code k = 0; k < order; ++k) {
    exp_[k + order] = exp_[k];
    log_[exp_[k]] = k;
  }
}

Code Field::inv(Code a) const {
  require(a != 0 && a < size_, ErrorKind::DivisionByZero, "inverse of zero");
  const Code order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

Code Field::div(Code a, Code b) const {
  require(b != 0, ErrorKind::DivisionByZero, "division by zero");
  return mul(a, inv(b));
}

Code Field::pow(Code a, std::uint64_t e) const noexcept {
  Code result = 1;
  Code base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::string Field::describe() const {
  std::ostringstream os;
  if (p_ == 2) {
    os << "F_" << size_ << " (modulus 0x" << std::hex << modulus_ << ")";
  } else {
    os << "F_" << size_;
  }
  return os.str();
}

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithKind kind) {
  require(a.owner && same_field(a.owner, b.owner), ErrorKind::OwnerMismatch,
          "field elements belong to different fields");
  require(a.owner->contains(a.code) && a.owner->contains(b.code), ErrorKind::InvalidArgument,
          "element code out of range");
  switch (kind) {
    case ArithKind::Add: return {a.owner, a.owner->add(a.code, b.code)};
    case ArithKind::Mul: return {a.owner, a.owner->mul(a.code, b.code)};
    case ArithKind::Div: return {a.owner, a.owner->div(a.code, b.code)};
  }
  fail(ErrorKind::Internal, "unknown arithmetic kind");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return field_arith(a, b, ArithKind::Add);
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return field_arith(a, b, ArithKind::Mul);
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return field_arith(a, b, ArithKind::Div);
}

FieldTower::FieldTower(FieldPtr base, int n, std::optional<std::uint32_t> top_modulus)
    : base_(std::move(base)), n_(n) {
  require(base_ != nullptr, ErrorKind::InvalidArgument, "tower needs a base field");
  require(n >= 1, ErrorKind::InvalidArgument, "tower degree n must be >= 1");
  if (n == 1 && !top_modulus) {
    top_ = base_;
  } else {
    require(base_->characteristic() == 2, ErrorKind::InvalidArgument,
            "proper extensions are only provided in characteristic 2");
    const int hn = base_->degree() * n;
    require(hn <= kMaxFieldDegree, ErrorKind::CapExceeded,
            "top field degree " + std::to_string(hn) + " exceeds 16");
    top_ = Field::make(hn, top_modulus);
  }
  const Field& top = *top_;
  const Field& bf = *base_;

  // Root of the base modulus with the smallest code.
  bool found = false;
  for (Code r = 0; r < top.size() && !found; ++r) {
    Code value = 0;
    Code power = 1;
    for (int i = 0; i <= bf.degree(); ++i) {
      if (bf.modulus_bits() & (1u << i)) value = top.add(value, power);
      power = top.mul(power, r);
    }
    if (value == 0) {
      root_ = r;
      found = true;
    }
  }
  require(found, ErrorKind::Internal, "base modulus has no root in the top field");

  embed_.resize(bf.size());
  restrict_.assign(top.size(), -1);
  for (Code a = 0; a < bf.size(); ++a) {
    Code image = a;
    if (top_ != base_) {
      image = 0;
      Code power = 1;
      for (int i = 0; i < bf.degree(); ++i) {
        if (a & (1u << i)) image = top.add(image, power);
        power = top.mul(power, root_);
      }
    }
    embed_[a] = image;
    restrict_[image] = static_cast<std::int32_t>(a);
  }

  // Reduction basis 1, x, ..., x^{n-1}; x has degree hn over F_2, hence n over F_q.
  basis_.resize(n_);
  const Code x = (top_ == base_) ? 1 : 2;
  Code power = 1;
  for (int i = 0; i < n_; ++i) {
    basis_[i] = power;
    power = top.mul(power, x);
  }

  expand_.assign(static_cast<std::size_t>(top.size()) * n_, 0);
  std::vector<bool> seen(top.size(), false);
  std::vector<Code> coords(n_, 0);
  const std::uint64_t combos = [&] {
    std::uint64_t c = 1;
    for (int i = 0; i < n_; ++i) c *= bf.size();
    return c;
  }();
  for (std::uint64_t idx = 0; idx < combos; ++idx) {
    std::uint64_t rest = idx;
    for (int i = 0; i < n_; ++i) {
      coords[i] = static_cast<Code>(rest % bf.size());
      rest /= bf.size();
    }
    const Code value = combine(coords);
    require(!seen[value], ErrorKind::Internal, "reduction basis is not F_q-independent");
    seen[value] = true;
    std::copy(coords.begin(), coords.end(),
              expand_.begin() + static_cast<std::ptrdiff_t>(value) * n_);
  }
}

Code FieldTower::embed(Code a) const {
  require(a < base_->size(), ErrorKind::OwnerMismatch, "element is not in the base field");
  return embed_[a];
}

std::optional<Code> FieldTower::restrict(Code a) const {
  require(a < top_->size(), ErrorKind::OwnerMismatch, "element is not in the top field");
  if (restrict_[a] < 0) return std::nullopt;
  return static_cast<Code>(restrict_[a]);
}

Code FieldTower::frobenius(Code a) const {
  require(a < top_->size(), ErrorKind::OwnerMismatch, "element is not in the top field");
  // Square h times, h = log2 q; for odd prime fields x^p = x.
  if (top_->characteristic() != 2) return a;
  Code r = a;
  for (int i = 0; i < base_->degree(); ++i) r = top_->mul(r, r);
  return r;
}

std::vector<Code> FieldTower::galois_orbit(Code a) const {
  std::vector<Code> orbit{a};
  for (Code next = frobenius(a); next != a; next = frobenius(next)) orbit.push_back(next);
  return orbit;
}

std::span<const Code> FieldTower::expand(Code a) const {
  require(a < top_->size(), ErrorKind::OwnerMismatch, "element is not in the top field");
  return {expand_.data() + static_cast<std::size_t>(a) * n_, static_cast<std::size_t>(n_)};
}

Code FieldTower::combine(std::span<const Code> coords) const {
  require(coords.size() == static_cast<std::size_t>(n_), ErrorKind::InvalidArgument,
          "coordinate vector has the wrong length");
  Code value = 0;
  for (int i = 0; i < n_; ++i) {
    value = top_->add(value, top_->mul(embed(coords[i]), basis_[i]));
  }
  return value;
}

FieldElement frobenius(const FieldElement& a, const FieldTower& tower) {
  require(same_field(a.owner, tower.top()), ErrorKind::OwnerMismatch,
          "element does not live in the top field of the tower");
  return {tower.top(), tower.frobenius(a.code)};
}

std::vector<FieldElement> galois_orbit(const FieldElement& a, const FieldTower& tower) {
  require(same_field(a.owner, tower.top()), ErrorKind::OwnerMismatch,
          "element does not live in the top field of the tower");
  std::vector<FieldElement> out;
  for (Code c : tower.galois_orbit(a.code)) out.push_back({tower.top(), c});
  return out;
}

}  // namespace pal
