#include "pal/projective.hpp"

#include <algorithm>

namespace pal {

std::uint64_t projective_point_count(std::uint64_t q, int rank) {
  if (rank <= 0) return 0;
  std::uint64_t count = 0;
  std::uint64_t power = 1;
  for (int i = 0; i < rank; ++i) {
    count += power;
    power *= q;
  }
  return count;
}

Subspace::Subspace(FieldPtr field, int ambient_dim)
    : field_(std::move(field)), ambient_dim_(ambient_dim), basis_(0, ambient_dim + 1) {
  require(field_ != nullptr, ErrorKind::InvalidArgument, "subspace needs a field");
  require(ambient_dim >= 0, ErrorKind::InvalidArgument, "ambient dimension must be >= 0");
}

Subspace Subspace::from_rows(FieldPtr field, int ambient_dim, Matrix rows) {
  require(rows.cols() == ambient_dim + 1, ErrorKind::AmbientMismatch,
          "basis width does not match ambient dimension");
  for (Code c : rows.data()) {
    require(field->contains(c), ErrorKind::InvalidArgument, "entry is not a field element code");
  }
  Subspace s(std::move(field), ambient_dim);
  s.pivots_ = rref_in_place(*s.field_, rows);
  s.basis_ = std::move(rows);
  return s;
}

Subspace Subspace::from_vectors(FieldPtr field, int ambient_dim, const std::vector<Vector>& rows) {
  return from_rows(std::move(field), ambient_dim, Matrix::from_rows(rows, ambient_dim + 1));
}

Subspace Subspace::point(FieldPtr field, std::span<const Code> coords) {
  const int d = static_cast<int>(coords.size()) - 1;
  Matrix m(0, d + 1);
  m.append_row(coords);
  Subspace s = from_rows(std::move(field), d, std::move(m));
  require(s.rank() == 1, ErrorKind::InvalidArgument, "the zero vector is not a point");
  return s;
}

Subspace Subspace::whole(FieldPtr field, int ambient_dim) {
  return from_rows(std::move(field), ambient_dim, Matrix::identity(ambient_dim + 1));
}

bool Subspace::contains_vector(std::span<const Code> v) const {
  require(static_cast<int>(v.size()) == ambient_dim_ + 1, ErrorKind::AmbientMismatch,
          "vector length does not match ambient dimension");
  const Field& f = *field_;
  Vector residual(v.begin(), v.end());
  for (int r = 0; r < rank(); ++r) {
    const Code factor = residual[pivots_[r]];
    if (factor == 0) continue;
    auto row = basis_.row(r);
    for (int c = pivots_[r]; c <= ambient_dim_; ++c) {
      residual[c] = f.sub(residual[c], f.mul(factor, row[c]));
    }
  }
  return std::all_of(residual.begin(), residual.end(), [](Code c) { return c == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  check_same_ambient(*this, other);
  if (other.rank() > rank()) return false;
  for (int r = 0; r < other.rank(); ++r) {
    if (!contains_vector(other.basis_.row(r))) return false;
  }
  return true;
}

std::size_t Subspace::hash() const noexcept {
  std::size_t h = std::size_t(ambient_dim_) * 0x9e3779b97f4a7c15ULL + std::size_t(rank());
  for (Code c : basis_.data()) h = (h ^ c) * 0x100000001b3ULL + (h >> 29);
  return h;
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return a.basis_.data() < b.basis_.data();
}

void check_same_ambient(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim() && same_field(a.field(), b.field()),
          ErrorKind::AmbientMismatch, "subspaces live in different projective spaces");
}

Subspace span(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  Matrix rows = a.basis();
  rows.append_rows(b.basis());
  return Subspace::from_rows(a.field(), a.ambient_dim(), std::move(rows));
}

Subspace span(std::span<const Subspace> parts) {
  require(!parts.empty(), ErrorKind::InvalidArgument, "span of an empty list");
  Matrix rows = parts.front().basis();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    check_same_ambient(parts.front(), parts[i]);
    rows.append_rows(parts[i].basis());
  }
  return Subspace::from_rows(parts.front().field(), parts.front().ambient_dim(), std::move(rows));
}

Subspace dual(const Subspace& a) {
  const int d = a.ambient_dim();
  if (a.empty()) return Subspace::whole(a.field(), d);
  return Subspace::from_rows(a.field(), d, nullspace(*a.field(), a.basis()));
}

Subspace meet(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  return dual(span(dual(a), dual(b)));
}

bool are_skew(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  Matrix rows = a.basis();
  rows.append_rows(b.basis());
  return rank(*a.field(), std::move(rows)) == a.rank() + b.rank();
}

Quotient::Quotient(const Subspace& center) : center_(center) {
  require(!center.empty() && !center.is_whole(), ErrorKind::InvalidArgument,
          "quotient center must be nonempty and proper");
  const int d = center.ambient_dim();
  std::vector<bool> pivot(d + 1, false);
  for (int p : center.pivots()) pivot[p] = true;
  Matrix unit(0, d + 1);
  Vector e(d + 1, 0);
  for (int c = 0; c <= d; ++c) {
    if (pivot[c]) continue;
    e[c] = 1;
    unit.append_row(e);
    e[c] = 0;
  }
  complement_ = Subspace::from_rows(center.field(), d, std::move(unit));
  init();
}

Quotient::Quotient(const Subspace& center, const Subspace& complement)
    : center_(center), complement_(complement) {
  require(!center.empty() && !center.is_whole(), ErrorKind::InvalidArgument,
          "quotient center must be nonempty and proper");
  check_same_ambient(center, complement);
  require(center.rank() + complement.rank() == center.ambient_dim() + 1 &&
              are_skew(center, complement),
          ErrorKind::InvalidArgument, "complement is not skew to the center");
  init();
}

void Quotient::init() {
  Matrix full = center_.basis();
  full.append_rows(complement_.basis());
  auto inv = inverse(*center_.field(), full);
  require(inv.has_value(), ErrorKind::Internal, "center and complement do not span");
  inverse_basis_ = std::move(*inv);
}

Vector Quotient::project(std::span<const Code> v) const {
  const Vector coords = multiply(*center_.field(), v, inverse_basis_);
  return Vector(coords.begin() + center_.rank(), coords.end());
}

Subspace Quotient::image(const Subspace& s) const {
  check_same_ambient(center_, s);
  Matrix rows(0, complement_.rank());
  for (int r = 0; r < s.rank(); ++r) rows.append_row(project(s.basis().row(r)));
  return Subspace::from_rows(center_.field(), target_dim(), std::move(rows));
}

Vector Quotient::lift(std::span<const Code> v) const {
  return multiply(*center_.field(), v, complement_.basis());
}

Subspace Quotient::preimage(const Subspace& t) const {
  require(t.ambient_dim() == target_dim() && same_field(t.field(), center_.field()),
          ErrorKind::AmbientMismatch, "subspace does not live in the quotient space");
  Matrix rows = center_.basis();
  for (int r = 0; r < t.rank(); ++r) rows.append_row(lift(t.basis().row(r)));
  return Subspace::from_rows(center_.field(), center_.ambient_dim(), std::move(rows));
}

namespace {

Vector random_vector(const Field& f, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<Code> dist(0, f.size() - 1);
  Vector v(len);
  for (auto& c : v) c = dist(rng);
  return v;
}

}  // namespace

Subspace random_complement(const Subspace& center, std::mt19937_64& rng) {
  const int d = center.ambient_dim();
  const int need = d + 1 - center.rank();
  for (;;) {
    Matrix rows(0, d + 1);
    for (int i = 0; i < need; ++i) rows.append_row(random_vector(*center.field(), d + 1, rng));
    Subspace w = Subspace::from_rows(center.field(), d, std::move(rows));
    if (w.rank() == need && are_skew(center, w)) return w;
  }
}

Subspace random_subspace(const FieldPtr& field, int ambient_dim, int rank, std::mt19937_64& rng) {
  for (;;) {
    Matrix rows(0, ambient_dim + 1);
    for (int i = 0; i < rank; ++i) rows.append_row(random_vector(*field, ambient_dim + 1, rng));
    Subspace s = Subspace::from_rows(field, ambient_dim, std::move(rows));
    if (s.rank() == rank) return s;
  }
}

Subspace to_chart(const Subspace& host, const Subspace& s) {
  require(host.contains(s), ErrorKind::InvalidArgument, "subspace is not inside the chart host");
  Matrix rows(0, host.rank());
  Vector c(host.rank());
  for (int r = 0; r < s.rank(); ++r) {
    auto row = s.basis().row(r);
    for (int k = 0; k < host.rank(); ++k) c[k] = row[host.pivots()[k]];
    rows.append_row(c);
  }
  return Subspace::from_rows(host.field(), host.rank() - 1, std::move(rows));
}

Subspace from_chart(const Subspace& host, const Subspace& s) {
  require(s.ambient_dim() == host.rank() - 1 && same_field(s.field(), host.field()),
          ErrorKind::AmbientMismatch, "chart subspace does not match host");
  return Subspace::from_rows(host.field(), host.ambient_dim(),
                             multiply(*host.field(), s.basis(), host.basis()));
}

void for_each_point(const Subspace& s, const std::function<void(const Vector&)>& fn) {
  const Field& f = *s.field();
  const int r = s.rank();
  if (r == 0) return;
  require(projective_point_count(f.size(), r) <= kPointEnumerationCap, ErrorKind::CapExceeded,
          "point enumeration cap exceeded");
  const int width = s.ambient_dim() + 1;
  Vector coeff(r);
  Vector point(width);
  for (int lead = 0; lead < r; ++lead) {
    std::fill(coeff.begin(), coeff.end(), 0);
    coeff[lead] = 1;
    // odometer over coefficients lead+1 .. r-1
    for (;;) {
      std::fill(point.begin(), point.end(), 0);
      for (int k = lead; k < r; ++k) {
        if (coeff[k] == 0) continue;
        auto row = s.basis().row(k);
        for (int c = s.pivots()[k]; c < width; ++c) point[c] = f.add(point[c], f.mul(coeff[k], row[c]));
      }
      fn(point);
      int k = r - 1;
      while (k > lead && ++coeff[k] == f.size()) coeff[k--] = 0;
      if (k == lead) break;
    }
  }
}

std::vector<Vector> points_of(const Subspace& s) {
  std::vector<Vector> pts;
  pts.reserve(projective_point_count(s.field()->size(), s.rank()));
  for_each_point(s, [&](const Vector& v) { pts.push_back(v); });
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::uint64_t vector_key(std::span<const Code> v, Code field_size) {
  std::uint64_t key = 0;
  for (Code c : v) key = key * field_size + c;
  return key;
}

void for_each_subspace(const FieldPtr& field, int ambient_dim, int rank,
                       const std::function<void(const Subspace&)>& fn) {
  const int width = ambient_dim + 1;
  if (rank < 0 || rank > width) return;
  const Code q = field->size();
  std::vector<int> piv(rank);
  for (int i = 0; i < rank; ++i) piv[i] = i;
  for (;;) {
    // free slots: (row, col) with col > piv[row] and col not a pivot
    std::vector<bool> is_pivot(width, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < rank; ++r)
      for (int c = piv[r] + 1; c < width; ++c)
        if (!is_pivot[c]) slots.emplace_back(r, c);
    Matrix m(rank, width);
    for (int r = 0; r < rank; ++r) m.at(r, piv[r]) = 1;
    std::vector<Code> vals(slots.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < slots.size(); ++i) m.at(slots[i].first, slots[i].second) = vals[i];
      fn(Subspace::from_rows(field, ambient_dim, m));
      std::size_t i = 0;
      while (i < vals.size() && ++vals[i] == q) vals[i++] = 0;
      if (i == vals.size()) break;
    }
    // next combination of pivot columns
    int i = rank - 1;
    while (i >= 0 && piv[i] == width - rank + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < rank; ++j) piv[j] = piv[j - 1] + 1;
  }
}

Subspace extend_scalars(const Subspace& s, const FieldTower& tower) {
  require(same_field(s.field(), tower.base()), ErrorKind::OwnerMismatch,
          "subspace is not over the base field of the tower");
  Matrix m = s.basis();
  Matrix out(0, m.cols());
  Vector row(m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) row[c] = tower.embed(m.at(r, c));
    out.append_row(row);
  }
  return Subspace::from_rows(tower.top(), s.ambient_dim(), std::move(out));
}

std::optional<Subspace> restrict_scalars(const Subspace& s, const FieldTower& tower) {
  require(same_field(s.field(), tower.top()), ErrorKind::OwnerMismatch,
          "subspace is not over the top field of the tower");
  const Matrix& m = s.basis();
  Matrix out(0, m.cols());
  Vector row(m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      auto b = tower.restrict(m.at(r, c));
      if (!b) return std::nullopt;
      row[c] = *b;
    }
    out.append_row(row);
  }
  return Subspace::from_rows(tower.base(), s.ambient_dim(), std::move(out));
}

Subspace conjugate(const Subspace& s, const FieldTower& tower) {
  require(same_field(s.field(), tower.top()), ErrorKind::OwnerMismatch,
          "subspace is not over the top field of the tower");
  const Matrix& m = s.basis();
  Matrix out(0, m.cols());
  Vector row(m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) row[c] = tower.frobenius(m.at(r, c));
    out.append_row(row);
  }
  return Subspace::from_rows(tower.top(), s.ambient_dim(), std::move(out));
}

}  // namespace pal
