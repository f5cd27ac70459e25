#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nexang {

using Int = std::int64_t;

enum class ErrorCode {
  InvalidGroup,
  InfiniteGroup,
  DimensionMismatch,
  NotWellDefined,
  BoundExceeded,
  Overflow,
  ObjectMismatch,
  NotInCategory,
  NotComposable,
  NotAMorphism,
  NotAComplex,
  InvalidBackend,
  InvalidFunctor,
  NotRespecting,
  NaturalityViolation,
  StructureMismatch,
  EndpointMismatch,
  NotExangulated,
  NotNatural,
  Unsupported,
  Parse,
  Validation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Arithmetic helpers. All throw ErrorCode::Overflow instead of wrapping.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int mod(Int a, Int m);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
struct ExtGcd {
  Int g, s, t;  // s*a + t*b == g
};
ExtGcd ext_gcd(Int a, Int b);
std::optional<Int> inverse_mod(Int a, Int m);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Int fill = 0);
  Matrix(std::initializer_list<std::initializer_list<Int>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Int> d);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  bool operator==(const Matrix& rhs) const = default;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  std::vector<Int> column(std::size_t c) const;
  std::vector<Int> apply(std::span<const Int> v) const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// U * M * V == D, U and V unimodular, D diagonal with d1 | d2 | ... and d_i >= 0.
struct SmithForm {
  Matrix U, D, V;
  Matrix U_inverse;
};
SmithForm smith_normal_form(const Matrix& m);

// Invariant-factor form: d1 | d2 | ... , every d_i >= 2. The trivial group has no factors.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<Int> factors);

  static FinAbGroup cyclic(Int d);
  // Canonical form of an arbitrary direct sum of cyclic groups.
  static FinAbGroup sum_of_cyclic(std::span<const Int> orders);

  const std::vector<Int>& factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_trivial() const noexcept { return factors_.empty(); }
  Int order() const;
  Int exponent() const;
  std::string to_string() const;

  auto operator<=>(const FinAbGroup&) const = default;

 private:
  std::vector<Int> factors_;
};

struct GroupElement {
  FinAbGroup parent;
  std::vector<Int> coords;

  static GroupElement zero(const FinAbGroup& g);
  static GroupElement make(const FinAbGroup& g, std::vector<Int> coords);
  static GroupElement basis(const FinAbGroup& g, std::size_t i);

  bool is_zero() const;
  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement scaled(Int k) const;
  std::string to_string() const;

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

class GroupHom {
 public:
  GroupHom() = default;
  // Column j is the image of the j-th generator of the source. Throws NotWellDefined.
  GroupHom(FinAbGroup source, FinAbGroup target, Matrix m);

  static GroupHom zero(const FinAbGroup& s, const FinAbGroup& t);
  static GroupHom identity(const FinAbGroup& g);

  const FinAbGroup& source() const noexcept { return source_; }
  const FinAbGroup& target() const noexcept { return target_; }
  const Matrix& matrix() const noexcept { return m_; }

  GroupElement operator()(const GroupElement& x) const;
  GroupHom operator+(const GroupHom& o) const;
  GroupHom operator-() const;
  GroupHom scaled(Int k) const;
  bool is_zero() const;
  bool operator==(const GroupHom&) const = default;

 private:
  FinAbGroup source_, target_;
  Matrix m_;
};

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f

// Z^n / colspan(relations). to_canon: n -> k coordinates, from_canon: k -> n.
struct Canonical {
  FinAbGroup group;
  Matrix to_canon;
  Matrix from_canon;

  std::vector<Int> canon_of(std::span<const Int> raw) const;
  std::vector<Int> raw_of(std::span<const Int> canon) const;
};
Canonical canonicalize(const Matrix& relations);
// Shortcut for a direct sum of cyclic groups of the given orders (orders may be 1).
Canonical canonicalize_cyclic(std::span<const Int> orders);

struct HomGroup {
  FinAbGroup source, target;
  FinAbGroup group;
  std::vector<GroupHom> basis;

  GroupElement coords_of(const GroupHom& f) const;
  GroupElement coords_of_matrix(const Matrix& m) const;
  GroupHom hom_of(const GroupElement& x) const;
  Matrix matrix_of(std::span<const Int> coords) const;

  std::vector<Int> raw_moduli;  // gcd(a_j, b_i), row-major over (i, j)
  Canonical canon;
};
HomGroup hom_group(const FinAbGroup& g, const FinAbGroup& h);

struct Subgroup {
  FinAbGroup group;
  GroupHom inclusion;
};
Subgroup kernel(const GroupHom& f);

struct Quotient {
  FinAbGroup group;
  GroupHom projection;
};
Quotient cokernel(const GroupHom& f);

std::optional<GroupElement> solve(const GroupHom& f, const GroupElement& y);
bool is_injective(const GroupHom& f);
bool is_surjective(const GroupHom& f);
Int image_order(const GroupHom& f);

std::size_t enumeration_bound();
void set_enumeration_bound(std::size_t bound);
std::vector<GroupElement> enumerate(const FinAbGroup& g);

// Linear algebra over arbitrary direct sums of cyclic groups (moduli need not form a chain).
namespace linear {

struct Map {
  std::vector<Int> src;  // moduli of the unknowns
  std::vector<Int> dst;  // moduli of the equations
  Matrix m;              // dst.size() x src.size()
};

struct ModSmith {
  Matrix U, U_inverse, V;
  std::vector<Int> diag;  // min(r, c) entries, each a divisor of N; N stands for 0
};
ModSmith smith_mod(const Matrix& a, Int n);

std::optional<std::vector<Int>> solve(const Map& f, std::span<const Int> y);

struct Span {
  FinAbGroup group;
  Matrix inclusion;  // src.size() x rank: canonical coords -> source coords
};
Span kernel(const Map& f);

// (sum Z/moduli_i) / span(gens columns)
Canonical quotient(std::span<const Int> moduli, const Matrix& gens);

Int order_of(std::span<const Int> moduli);
std::vector<std::vector<Int>> enumerate(std::span<const Int> moduli);

}  // namespace linear

// fn(x) == rhs for x in a product of groups, fn affine. The linear part is recovered
// by evaluating fn at zero and at each generator.
class AffineSystem {
 public:
  using Values = std::vector<GroupElement>;
  using Fn = std::function<Values(const Values&)>;

  AffineSystem(std::vector<FinAbGroup> unknowns, std::vector<FinAbGroup> equations, const Fn& fn);

  std::optional<Values> solve(const Values& rhs) const;
  // Every solution, particular + kernel, in enumeration order; throws BoundExceeded past the bound.
  std::vector<Values> all_solutions(const Values& rhs) const;
  Int kernel_order() const;
  bool is_injective() const { return kernel_order() == 1; }

  const linear::Map& linear_part() const noexcept { return map_; }
  std::vector<Int> flatten(const Values& v, const std::vector<FinAbGroup>& groups) const;
  Values split(std::span<const Int> flat) const;

 private:
  std::vector<FinAbGroup> unknowns_, equations_;
  linear::Map map_;
  std::vector<Int> constant_;
  mutable std::optional<linear::Span> kernel_;
  const linear::Span& kernel_span() const;
};

}  // namespace nexang
