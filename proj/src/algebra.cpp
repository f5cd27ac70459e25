#include "nexang/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <utility>

namespace nexang {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ObjectMismatch: return "ObjectMismatch";
    case ErrorCode::NotInCategory: return "NotInCategory";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotAMorphism: return "NotAMorphism";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::InvalidBackend: return "InvalidBackend";
    case ErrorCode::InvalidFunctor: return "InvalidFunctor";
    case ErrorCode::NotRespecting: return "NotRespecting";
    case ErrorCode::NaturalityViolation: return "NaturalityViolation";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::NotExangulated: return "NotExangulated";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Validation: return "Validation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication");
  return r;
}

Int mod(Int a, Int m) {
  if (m <= 0) throw Error(ErrorCode::InvalidGroup, "modulus must be positive");
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd(a, b), b < 0 ? -b : b);
}

ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::optional<Int> inverse_mod(Int a, Int m) {
  if (m == 1) return 0;
  auto e = ext_gcd(mod(a, m), m);
  if (e.g != 1) return std::nullopt;
  return mod(e.s, m);
}

namespace {

Int mulmod(Int a, Int b, Int m) {
  __int128 p = static_cast<__int128>(a) * b % m;
  return static_cast<Int>(p < 0 ? p + m : p);
}

Int addmod(Int a, Int b, Int m) { return mod(checked_add(a, b), m); }

}  // namespace

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, Int fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(std::span<const Int> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "hstack");
  Matrix m(a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "vstack");
  Matrix m(a.rows_ + b.rows_, a.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, 0, b);
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix m(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Int a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) m(i, j) = checked_add(m(i, j), checked_mul(a, rhs(k, j)));
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = checked_add(data_[i], rhs.data_[i]);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block");
  Matrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::DimensionMismatch, "set_block");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::vector<Int> Matrix::column(std::size_t c) const {
  std::vector<Int> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<Int> Matrix::apply(std::span<const Int> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix apply");
  std::vector<Int> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- integer Smith form

namespace {

struct IntSnf {
  Matrix a, u, ui, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // rows (t, i) <- [[s, x], [y, z]] * rows (t, i), determinant 1
  void row_op(std::size_t t, std::size_t i, Int s, Int x, Int y, Int z) {
    auto mix = [&](Matrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Int p = m(t, c), q = m(i, c);
        m(t, c) = checked_add(checked_mul(s, p), checked_mul(x, q));
        m(i, c) = checked_add(checked_mul(y, p), checked_mul(z, q));
      }
    };
    mix(a);
    mix(u);
    // inverse [[z, -x], [-y, s]] acts on columns of ui from the right
    for (std::size_t r = 0; r < ui.rows(); ++r) {
      Int p = ui(r, t), q = ui(r, i);
      ui(r, t) = checked_add(checked_mul(p, z), checked_mul(q, -y));
      ui(r, i) = checked_add(checked_mul(p, -x), checked_mul(q, s));
    }
  }
  // cols (t, j) <- cols (t, j) * [[s, y], [x, z]]
  void col_op(std::size_t t, std::size_t j, Int s, Int x, Int y, Int z) {
    auto mix = [&](Matrix& m) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Int p = m(r, t), q = m(r, j);
        m(r, t) = checked_add(checked_mul(s, p), checked_mul(x, q));
        m(r, j) = checked_add(checked_mul(y, p), checked_mul(z, q));
      }
    };
    mix(a);
    mix(v);
  }
};

}  // namespace

SmithForm smith_normal_form(const Matrix& m) {
  const std::size_t n = m.rows(), k = m.cols();
  IntSnf w{m, Matrix::identity(n), Matrix::identity(n), Matrix::identity(k)};
  Matrix& a = w.a;
  for (std::size_t t = 0; t < std::min(n, k); ++t) {
    for (;;) {
      std::size_t bi = n, bj = k;
      Int best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < k; ++j) {
          Int x = a(i, j) < 0 ? -a(i, j) : a(i, j);
          if (x != 0 && (best == 0 || x < best)) best = x, bi = i, bj = j;
        }
      if (best == 0) goto finished;
      w.swap_rows(t, bi);
      w.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        Int p = a(t, t), b = a(i, t);
        if (b == 0) continue;
        if (b % p == 0) {
          w.row_op(t, i, 1, 0, -(b / p), 1);
        } else {
          auto e = ext_gcd(p, b);
          w.row_op(t, i, e.s, e.t, -(b / e.g), p / e.g);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        Int p = a(t, t), b = a(t, j);
        if (b == 0) continue;
        if (b % p == 0) {
          w.col_op(t, j, 1, 0, -(b / p), 1);
        } else {
          auto e = ext_gcd(p, b);
          w.col_op(t, j, e.s, e.t, -(b / e.g), p / e.g);
          clean = false;
        }
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < n && divisible; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (a(i, j) % a(t, t) != 0) {
            w.row_op(t, i, 1, 1, 0, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < w.u.cols(); ++c) w.u(t, c) = -w.u(t, c);
      for (std::size_t r = 0; r < w.ui.rows(); ++r) w.ui(r, t) = -w.ui(r, t);
    }
  }
finished:
  return SmithForm{std::move(w.u), std::move(w.a), std::move(w.v), std::move(w.ui)};
}

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(std::vector<Int> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw Error(ErrorCode::InvalidGroup, "invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw Error(ErrorCode::InvalidGroup, "invariant factors must form a divisibility chain");
  }
}

FinAbGroup FinAbGroup::cyclic(Int d) {
  if (d < 1) throw Error(ErrorCode::InvalidGroup, "cyclic order must be >= 1");
  return d == 1 ? FinAbGroup{} : FinAbGroup{{d}};
}

FinAbGroup FinAbGroup::sum_of_cyclic(std::span<const Int> orders) { return canonicalize_cyclic(orders).group; }

Int FinAbGroup::order() const {
  Int o = 1;
  for (Int d : factors_) o = checked_mul(o, d);
  return o;
}

Int FinAbGroup::exponent() const { return factors_.empty() ? 1 : factors_.back(); }

std::string FinAbGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "+Z/" : "Z/") + std::to_string(factors_[i]);
  return s;
}

// ---------------------------------------------------------------- GroupElement

GroupElement GroupElement::zero(const FinAbGroup& g) { return {g, std::vector<Int>(g.rank(), 0)}; }

GroupElement GroupElement::make(const FinAbGroup& g, std::vector<Int> coords) {
  if (coords.size() != g.rank()) throw Error(ErrorCode::DimensionMismatch, "element of " + g.to_string());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod(coords[i], g.factors()[i]);
  return {g, std::move(coords)};
}

GroupElement GroupElement::basis(const FinAbGroup& g, std::size_t i) {
  auto e = zero(g);
  e.coords.at(i) = 1;
  return e;
}

bool GroupElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Int c) { return c == 0; });
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  if (parent != o.parent) throw Error(ErrorCode::ObjectMismatch, "adding elements of different groups");
  auto r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = addmod(coords[i], o.coords[i], parent.factors()[i]);
  return r;
}

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::operator-() const {
  auto r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = mod(-coords[i], parent.factors()[i]);
  return r;
}

GroupElement GroupElement::scaled(Int k) const {
  auto r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Int f = parent.factors()[i];
    r.coords[i] = mulmod(coords[i], mod(k, f), f);
  }
  return r;
}

std::string GroupElement::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
  return s + ")";
}

// ---------------------------------------------------------------- GroupHom

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, Matrix m)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
  if (m_.rows() != target_.rank() || m_.cols() != source_.rank())
    throw Error(ErrorCode::DimensionMismatch, "hom matrix shape");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    Int b = target_.factors()[i];
    for (std::size_t j = 0; j < m_.cols(); ++j) {
      m_(i, j) = mod(m_(i, j), b);
      if (mulmod(m_(i, j), source_.factors()[j] % b, b) != 0)
        throw Error(ErrorCode::NotWellDefined, "generator of order " + std::to_string(source_.factors()[j]) +
                                                   " mapped to element of non-dividing order");
    }
  }
}

GroupHom GroupHom::zero(const FinAbGroup& s, const FinAbGroup& t) { return {s, t, Matrix(t.rank(), s.rank())}; }

GroupHom GroupHom::identity(const FinAbGroup& g) { return {g, g, Matrix::identity(g.rank())}; }

GroupElement GroupHom::operator()(const GroupElement& x) const {
  if (x.parent != source_) throw Error(ErrorCode::ObjectMismatch, "applying hom to element outside its source");
  std::vector<Int> y(target_.rank(), 0);
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    Int b = target_.factors()[i];
    for (std::size_t j = 0; j < m_.cols(); ++j) y[i] = addmod(y[i], mulmod(m_(i, j), x.coords[j], b), b);
  }
  return {target_, std::move(y)};
}

GroupHom GroupHom::operator+(const GroupHom& o) const {
  if (source_ != o.source_ || target_ != o.target_) throw Error(ErrorCode::ObjectMismatch, "adding homs");
  return {source_, target_, m_ + o.m_};
}

GroupHom GroupHom::operator-() const { return scaled(-1); }

GroupHom GroupHom::scaled(Int k) const {
  Matrix m = m_;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Int b = target_.factors()[i];
      m(i, j) = mulmod(m(i, j), mod(k, b), b);
    }
  return {source_, target_, std::move(m)};
}

bool GroupHom::is_zero() const {
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j)
      if (m_(i, j) != 0) return false;
  return true;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target() != g.source()) throw Error(ErrorCode::NotComposable, "hom composition");
  Matrix m(g.target().rank(), f.source().rank());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int b = g.target().factors()[i];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < g.matrix().cols(); ++k)
        acc = addmod(acc, mulmod(g.matrix()(i, k), f.matrix()(k, j), b), b);
      m(i, j) = acc;
    }
  }
  return {f.source(), g.target(), std::move(m)};
}

// ---------------------------------------------------------------- canonical forms

std::vector<Int> Canonical::canon_of(std::span<const Int> raw) const {
  auto y = to_canon.apply(raw);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(y[i], group.factors()[i]);
  return y;
}

std::vector<Int> Canonical::raw_of(std::span<const Int> canon) const { return from_canon.apply(canon); }

Canonical canonicalize(const Matrix& relations) {
  const std::size_t n = relations.rows();
  auto snf = smith_normal_form(relations);
  std::vector<std::size_t> keep;
  std::vector<Int> factors;
  for (std::size_t i = 0; i < n; ++i) {
    Int d = i < relations.cols() ? snf.D(i, i) : 0;
    if (d == 0) throw Error(ErrorCode::InfiniteGroup, "presentation has a free summand");
    if (d > 1) keep.push_back(i), factors.push_back(d);
  }
  Canonical c{FinAbGroup(factors), Matrix(keep.size(), n), Matrix(n, keep.size())};
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      c.to_canon(r, j) = mod(snf.U(keep[r], j), factors[r]);
      c.from_canon(j, r) = snf.U_inverse(j, keep[r]);
    }
  }
  return c;
}

Canonical canonicalize_cyclic(std::span<const Int> orders) { return canonicalize(Matrix::diagonal(orders)); }

// ---------------------------------------------------------------- modular linear algebra

namespace linear {

namespace {

struct ModSnfWork {
  Matrix a, u, ui, v;
  Int n;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  Int lin(Int s, Int p, Int x, Int q) const { return addmod(mulmod(mod(s, n), p, n), mulmod(mod(x, n), q, n), n); }
  void row_op(std::size_t t, std::size_t i, Int s, Int x, Int y, Int z) {
    auto mix = [&](Matrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Int p = m(t, c), q = m(i, c);
        m(t, c) = lin(s, p, x, q);
        m(i, c) = lin(y, p, z, q);
      }
    };
    mix(a);
    mix(u);
    for (std::size_t r = 0; r < ui.rows(); ++r) {
      Int p = ui(r, t), q = ui(r, i);
      ui(r, t) = lin(z, p, -y, q);
      ui(r, i) = lin(-x, p, s, q);
    }
  }
  void col_op(std::size_t t, std::size_t j, Int s, Int x, Int y, Int z) {
    auto mix = [&](Matrix& m) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Int p = m(r, t), q = m(r, j);
        m(r, t) = lin(s, p, x, q);
        m(r, j) = lin(y, p, z, q);
      }
    };
    mix(a);
    mix(v);
  }
  void scale_row(std::size_t t, Int unit) {
    Int inv = *inverse_mod(unit, n);
    for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) = mulmod(a(t, c), unit, n);
    for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = mulmod(u(t, c), unit, n);
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, t) = mulmod(ui(r, t), inv, n);
  }
  // unit w with x * w == gcd(x, n) mod n
  Int normalising_unit(Int x) const {
    Int g = gcd(x, n);
    Int np = n / g;
    Int w0 = np == 1 ? 1 : *inverse_mod(x / g, np);
    for (Int k = 0; k < g; ++k) {
      Int w = mod(w0 + k * np, n);
      if (gcd(w, n) == 1) return w;
    }
    throw Error(ErrorCode::Overflow, "no normalising unit");
  }
};

Int lcm_of(std::span<const Int> a, Int start = 1) {
  Int l = start;
  for (Int x : a) l = lcm(l, x);
  return l;
}

// Rows of f.m scaled so that every equation lives in Z/N.
Matrix scaled_rows(const Map& f, Int n) {
  Matrix a(f.dst.size(), f.src.size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int s = n / f.dst[i];
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = mulmod(s, mod(f.m(i, j), n), n);
  }
  return a;
}

}  // namespace

ModSmith smith_mod(const Matrix& input, Int n) {
  const std::size_t r = input.rows(), c = input.cols();
  ModSnfWork w{Matrix(r, c), Matrix::identity(r), Matrix::identity(r), Matrix::identity(c), n};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) w.a(i, j) = mod(input(i, j), n);
  if (n == 1) {
    w.u = Matrix(r, r);
    w.ui = Matrix(r, r);
    w.v = Matrix(c, c);
  }
  Matrix& a = w.a;
  std::vector<Int> diag;
  const std::size_t k = std::min(r, c);
  std::size_t t = 0;
  for (; t < k; ++t) {
    for (;;) {
      std::size_t bi = r, bj = c;
      Int best = 0;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0) {
            Int g = gcd(a(i, j), n);
            if (best == 0 || g < best) best = g, bi = i, bj = j;
          }
      if (best == 0) break;
      w.swap_rows(t, bi);
      w.swap_cols(t, bj);
      w.scale_row(t, w.normalising_unit(a(t, t)));
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        Int p = a(t, t), b = a(i, t);
        if (b == 0) continue;
        if (b % p == 0) {
          w.row_op(t, i, 1, 0, -(b / p), 1);
        } else {
          auto e = ext_gcd(p, b);
          w.row_op(t, i, e.s, e.t, -(b / e.g), p / e.g);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        Int p = a(t, t), b = a(t, j);
        if (b == 0) continue;
        if (b % p == 0) {
          w.col_op(t, j, 1, 0, -(b / p), 1);
        } else {
          auto e = ext_gcd(p, b);
          w.col_op(t, j, e.s, e.t, -(b / e.g), p / e.g);
          clean = false;
        }
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            w.row_op(t, i, 1, 1, 0, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(a(t, t) == 0 ? n : a(t, t));
  }
  return ModSmith{std::move(w.u), std::move(w.ui), std::move(w.v), std::move(diag)};
}

std::optional<std::vector<Int>> solve(const Map& f, std::span<const Int> y) {
  if (y.size() != f.dst.size() || f.m.rows() != f.dst.size() || f.m.cols() != f.src.size())
    throw Error(ErrorCode::DimensionMismatch, "linear solve");
  const Int n = lcm_of(f.dst, lcm_of(f.src));
  std::vector<Int> yy(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yy[i] = mulmod(n / f.dst[i], mod(y[i], f.dst[i]), n);
  if (f.src.empty()) {
    if (std::all_of(yy.begin(), yy.end(), [](Int v) { return v == 0; })) return std::vector<Int>{};
    return std::nullopt;
  }
  auto snf = smith_mod(scaled_rows(f, n), n);
  const std::size_t r = f.dst.size(), c = f.src.size();
  std::vector<Int> cc(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cc[i] = addmod(cc[i], mulmod(snf.U(i, j), yy[j], n), n);
  std::vector<Int> z(c, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (i < snf.diag.size()) {
      Int d = snf.diag[i];
      if (d == n) {
        if (cc[i] != 0) return std::nullopt;
      } else {
        if (cc[i] % d != 0) return std::nullopt;
        z[i] = cc[i] / d;
      }
    } else if (cc[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(c, 0);
  for (std::size_t i = 0; i < c; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < c; ++j) acc = addmod(acc, mulmod(snf.V(i, j), z[j], n), n);
    x[i] = mod(acc, f.src[i]);
  }
  return x;
}

namespace {

// Generators (columns, reduced into src moduli) of {x : A x == 0} where A acts Z/N-linearly.
Matrix nullspace_gens(const Matrix& a, Int n, std::span<const Int> src) {
  const std::size_t r = a.rows(), c = a.cols();
  auto snf = smith_mod(a, n);
  std::vector<std::vector<Int>> zs;
  for (std::size_t j = 0; j < c; ++j) {
    Int step = 1;
    if (j < snf.diag.size()) {
      Int d = snf.diag[j];
      if (d == 1) continue;
      step = d == n ? 1 : n / d;
    }
    std::vector<Int> z(c, 0);
    z[j] = step;
    zs.push_back(std::move(z));
  }
  (void)r;
  Matrix g(c, zs.size());
  for (std::size_t k = 0; k < zs.size(); ++k)
    for (std::size_t i = 0; i < c; ++i) {
      Int acc = 0;
      for (std::size_t j = 0; j < c; ++j) acc = addmod(acc, mulmod(snf.V(i, j), zs[k][j], n), n);
      g(i, k) = mod(acc, src[i]);
    }
  return g;
}

}  // namespace

Span kernel(const Map& f) {
  if (f.m.rows() != f.dst.size() || f.m.cols() != f.src.size()) throw Error(ErrorCode::DimensionMismatch, "kernel");
  const std::size_t c = f.src.size();
  if (c == 0) return Span{FinAbGroup{}, Matrix(0, 0)};
  const Int n = lcm_of(f.dst, lcm_of(f.src));
  Matrix gens = nullspace_gens(scaled_rows(f, n), n, f.src);
  // Structure of the subgroup generated by gens: Z^g / {t : gens t == 0}.
  const std::size_t g = gens.cols();
  if (g == 0) return Span{FinAbGroup{}, Matrix(c, 0)};
  const Int n2 = lcm_of(f.src);
  Map rel{std::vector<Int>(g, n2), f.src, gens};
  Matrix relgens = nullspace_gens(scaled_rows(rel, n2), n2, rel.src);
  auto q = quotient(rel.src, relgens);
  Matrix incl = gens * q.from_canon;
  for (std::size_t i = 0; i < incl.rows(); ++i)
    for (std::size_t j = 0; j < incl.cols(); ++j) incl(i, j) = mod(incl(i, j), f.src[i]);
  return Span{q.group, std::move(incl)};
}

Canonical quotient(std::span<const Int> moduli, const Matrix& gens) {
  const std::size_t m = moduli.size();
  if (gens.rows() != m) throw Error(ErrorCode::DimensionMismatch, "quotient generators");
  if (m == 0) return Canonical{FinAbGroup{}, Matrix(0, 0), Matrix(0, 0)};
  const Int n = lcm_of(moduli);
  Matrix full = Matrix::hstack(Matrix::diagonal(moduli), gens);
  auto snf = smith_mod(full, n);
  std::vector<Int> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = i < snf.diag.size() ? snf.diag[i] : n;
  auto c2 = canonicalize_cyclic(d);
  Matrix to = c2.to_canon * snf.U;
  for (std::size_t i = 0; i < to.rows(); ++i)
    for (std::size_t j = 0; j < to.cols(); ++j) to(i, j) = mod(to(i, j), c2.group.factors()[i]);
  Matrix from(m, c2.group.rank());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < from.cols(); ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < m; ++k) acc = addmod(acc, mulmod(snf.U_inverse(i, k), mod(c2.from_canon(k, j), n), n), n);
      from(i, j) = mod(acc, moduli[i]);
    }
  return Canonical{c2.group, std::move(to), std::move(from)};
}

Int order_of(std::span<const Int> moduli) {
  Int o = 1;
  for (Int x : moduli) o = checked_mul(o, x);
  return o;
}

std::vector<std::vector<Int>> enumerate(std::span<const Int> moduli) {
  Int total = order_of(moduli);
  if (static_cast<std::size_t>(total) > enumeration_bound())
    throw Error(ErrorCode::BoundExceeded, "enumerating " + std::to_string(total) + " elements");
  std::vector<std::vector<Int>> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<Int> cur(moduli.size(), 0);
  for (Int k = 0; k < total; ++k) {
    out.push_back(cur);
    for (std::size_t i = cur.size(); i-- > 0;) {
      if (++cur[i] < moduli[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

}  // namespace linear

// ---------------------------------------------------------------- hom groups

GroupElement HomGroup::coords_of_matrix(const Matrix& m) const {
  const auto& a = source.factors();
  const auto& b = target.factors();
  if (m.rows() != b.size() || m.cols() != a.size()) throw Error(ErrorCode::DimensionMismatch, "hom coordinates");
  std::vector<Int> raw(raw_moduli.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      Int g = raw_moduli[i * a.size() + j];
      Int step = b[i] / g;
      Int x = mod(m(i, j), b[i]);
      if (x % step != 0) throw Error(ErrorCode::NotWellDefined, "matrix is not a homomorphism");
      raw[i * a.size() + j] = x / step;
    }
  return GroupElement{group, canon.canon_of(raw)};
}

GroupElement HomGroup::coords_of(const GroupHom& f) const {
  if (f.source() != source || f.target() != target) throw Error(ErrorCode::ObjectMismatch, "hom outside hom-group");
  return coords_of_matrix(f.matrix());
}

Matrix HomGroup::matrix_of(std::span<const Int> coords) const {
  const auto& a = source.factors();
  const auto& b = target.factors();
  auto raw = canon.raw_of(coords);
  Matrix m(b.size(), a.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      Int g = raw_moduli[i * a.size() + j];
      m(i, j) = mulmod(mod(raw[i * a.size() + j], g), b[i] / g, b[i]);
    }
  return m;
}

GroupHom HomGroup::hom_of(const GroupElement& x) const {
  if (x.parent != group) throw Error(ErrorCode::ObjectMismatch, "coordinates outside hom-group");
  return GroupHom(source, target, matrix_of(x.coords));
}

HomGroup hom_group(const FinAbGroup& g, const FinAbGroup& h) {
  HomGroup out;
  out.source = g;
  out.target = h;
  for (Int b : h.factors())
    for (Int a : g.factors()) out.raw_moduli.push_back(gcd(a, b));
  out.canon = canonicalize_cyclic(out.raw_moduli);
  out.group = out.canon.group;
  for (std::size_t k = 0; k < out.group.rank(); ++k) out.basis.push_back(out.hom_of(GroupElement::basis(out.group, k)));
  return out;
}

// ---------------------------------------------------------------- kernels, cokernels, solving

namespace {
linear::Map as_map(const GroupHom& f) { return {f.source().factors(), f.target().factors(), f.matrix()}; }
}  // namespace

Subgroup kernel(const GroupHom& f) {
  auto k = linear::kernel(as_map(f));
  return Subgroup{k.group, GroupHom(k.group, f.source(), k.inclusion)};
}

Quotient cokernel(const GroupHom& f) {
  auto q = linear::quotient(f.target().factors(), f.matrix());
  return Quotient{q.group, GroupHom(f.target(), q.group, q.to_canon)};
}

std::optional<GroupElement> solve(const GroupHom& f, const GroupElement& y) {
  if (y.parent != f.target()) throw Error(ErrorCode::ObjectMismatch, "solve target");
  auto x = linear::solve(as_map(f), y.coords);
  if (!x) return std::nullopt;
  return GroupElement{f.source(), std::move(*x)};
}

bool is_injective(const GroupHom& f) { return kernel(f).group.is_trivial(); }
bool is_surjective(const GroupHom& f) { return cokernel(f).group.is_trivial(); }
Int image_order(const GroupHom& f) { return f.source().order() / kernel(f).group.order(); }

namespace {
std::atomic<std::size_t> g_bound{4096};
}

std::size_t enumeration_bound() { return g_bound.load(); }
void set_enumeration_bound(std::size_t bound) { g_bound.store(bound); }

std::vector<GroupElement> enumerate(const FinAbGroup& g) {
  std::vector<GroupElement> out;
  for (auto& c : linear::enumerate(g.factors())) out.push_back(GroupElement{g, std::move(c)});
  return out;
}

}  // namespace nexang

namespace nexang {

namespace {
std::vector<Int> moduli_of(const std::vector<FinAbGroup>& groups) {
  std::vector<Int> m;
  for (const auto& g : groups) m.insert(m.end(), g.factors().begin(), g.factors().end());
  return m;
}
}  // namespace

std::vector<Int> AffineSystem::flatten(const Values& v, const std::vector<FinAbGroup>& groups) const {
  if (v.size() != groups.size()) throw Error(ErrorCode::DimensionMismatch, "affine system arity");
  std::vector<Int> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].parent != groups[k]) throw Error(ErrorCode::ObjectMismatch, "affine system value outside its group");
    out.insert(out.end(), v[k].coords.begin(), v[k].coords.end());
  }
  return out;
}

AffineSystem::Values AffineSystem::split(std::span<const Int> flat) const {
  Values out;
  std::size_t pos = 0;
  for (const auto& g : unknowns_) {
    std::vector<Int> c(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                       flat.begin() + static_cast<std::ptrdiff_t>(pos + g.rank()));
    out.push_back(GroupElement::make(g, std::move(c)));
    pos += g.rank();
  }
  return out;
}

AffineSystem::AffineSystem(std::vector<FinAbGroup> unknowns, std::vector<FinAbGroup> equations, const Fn& fn)
    : unknowns_(std::move(unknowns)), equations_(std::move(equations)) {
  map_.src = moduli_of(unknowns_);
  map_.dst = moduli_of(equations_);
  map_.m = Matrix(map_.dst.size(), map_.src.size());
  std::vector<Int> zero(map_.src.size(), 0);
  constant_ = flatten(fn(split(zero)), equations_);
  for (std::size_t j = 0; j < map_.src.size(); ++j) {
    auto e = zero;
    e[j] = 1;
    auto col = flatten(fn(split(e)), equations_);
    for (std::size_t i = 0; i < col.size(); ++i) map_.m(i, j) = mod(col[i] - constant_[i], map_.dst[i]);
  }
}

std::optional<AffineSystem::Values> AffineSystem::solve(const Values& rhs) const {
  auto y = flatten(rhs, equations_);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod(y[i] - constant_[i], map_.dst[i]);
  auto x = linear::solve(map_, y);
  if (!x) return std::nullopt;
  return split(*x);
}

const linear::Span& AffineSystem::kernel_span() const {
  if (!kernel_) kernel_ = linear::kernel(map_);
  return *kernel_;
}

Int AffineSystem::kernel_order() const { return kernel_span().group.order(); }

std::vector<AffineSystem::Values> AffineSystem::all_solutions(const Values& rhs) const {
  std::vector<Values> out;
  auto p = solve(rhs);
  if (!p) return out;
  auto base = flatten(*p, unknowns_);
  const auto& k = kernel_span();
  for (auto& c : linear::enumerate(k.group.factors())) {
    auto x = base;
    auto d = k.inclusion.apply(c);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i] + d[i], map_.src[i]);
    out.push_back(split(x));
  }
  return out;
}

}  // namespace nexang
