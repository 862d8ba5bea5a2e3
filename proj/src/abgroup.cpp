#include "coxlift/abgroup.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "coxlift/errors.hpp"

namespace coxlift {

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntegerMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Integer> IntegerMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<std::vector<Integer>> IntegerMatrix::to_rows() const {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntegerMatrix::add_col(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntegerMatrix::append_row(const std::vector<Integer>& row) {
  if (row.size() != cols_) throw InputError("matrix row has wrong length");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Integer IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntegerMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix dimension mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  SmithForm f{m, IntegerMatrix::identity(r), IntegerMatrix::identity(c), IntegerMatrix::identity(c), 0};
  IntegerMatrix& S = f.S;

  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    bool found = true;
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (S(i, j) != 0 && (pi == r || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) {
        found = false;
        break;
      }
      S.swap_rows(t, pi);
      f.U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      f.V.swap_cols(t, pj);
      f.V_inverse.swap_rows(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        Integer q = S(i, t) / S(t, t);
        S.add_row(i, t, -q);
        f.U.add_row(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        Integer q = S(t, j) / S(t, t);
        S.add_col(j, t, -q);
        f.V.add_col(j, t, -q);
        f.V_inverse.add_row(t, j, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (mod(S(i, j), abs(S(t, t))) != 0) {
            S.add_row(t, i, 1);
            f.U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!found) break;
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < r; ++j) f.U(t, j) = -f.U(t, j);
    }
  }
  f.rank = t;
  return f;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::unit(std::size_t rank, std::size_t i) {
  GroupElement g = zero(rank);
  g.coords_.at(i) = 1;
  return g;
}

GroupElement GroupElement::padded(std::size_t rank) const {
  if (rank < coords_.size()) throw InvariantViolation("cannot pad a group element to a smaller rank");
  auto c = coords_;
  c.resize(rank);
  return GroupElement(std::move(c));
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

GroupElement& GroupElement::operator+=(const GroupElement& o) {
  if (o.rank() != rank()) throw InvariantViolation("group elements of different ambient rank");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& o) {
  if (o.rank() != rank()) throw InvariantViolation("group elements of different ambient rank");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

GroupElement operator*(const Integer& k, GroupElement a) {
  for (auto& x : a.coords_) x *= k;
  return a;
}

GroupElement operator-(GroupElement a) {
  for (auto& x : a.coords_) x = -x;
  return a;
}

// ---------------------------------------------------------------------------
// FgAbelianGroup

FgAbelianGroup::FgAbelianGroup(std::size_t ambient_rank, IntegerMatrix relations)
    : ambient_rank_(ambient_rank), relations_(std::move(relations)) {
  if (relations_.cols() != ambient_rank_) {
    if (relations_.rows() == 0)
      relations_ = IntegerMatrix(0, ambient_rank_);
    else
      throw InputError("relation matrix width does not match the number of generators");
  }
  SmithForm f = smith_normal_form(relations_);
  diagonal_.assign(ambient_rank_, Integer(0));
  for (std::size_t i = 0; i < f.rank; ++i) diagonal_[i] = f.S(i, i);
  V_ = std::move(f.V);
  V_inverse_ = std::move(f.V_inverse);
  for (const auto& d : diagonal_) {
    if (d == 0)
      ++free_rank_;
    else if (d != 1)
      torsion_.push_back(d);
  }
}

FgAbelianGroup FgAbelianGroup::free(std::size_t rank) { return FgAbelianGroup(rank, IntegerMatrix(0, rank)); }

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) {
  IntegerMatrix r(1, 1);
  r(0, 0) = order;
  return FgAbelianGroup(1, r);
}

FgAbelianGroup FgAbelianGroup::from_invariants(const std::vector<Integer>& torsion, std::size_t free_rank) {
  const std::size_t n = torsion.size() + free_rank;
  IntegerMatrix r(torsion.size(), n);
  for (std::size_t i = 0; i < torsion.size(); ++i) r(i, i) = torsion[i];
  return FgAbelianGroup(n, r);
}

std::optional<Integer> FgAbelianGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

std::optional<Integer> FgAbelianGroup::exponent() const {
  if (!is_finite()) return std::nullopt;
  return torsion_.empty() ? Integer(1) : torsion_.back();
}

std::vector<Integer> FgAbelianGroup::canonical_coordinates(const GroupElement& g) const {
  if (g.rank() != ambient_rank_) throw InvariantViolation("group element rank " + std::to_string(g.rank()) +
                                                          " does not match ambient rank " +
                                                          std::to_string(ambient_rank_));
  std::vector<Integer> torsion_part, free_part;
  for (std::size_t j = 0; j < ambient_rank_; ++j) {
    const Integer& d = diagonal_[j];
    if (d == 1) continue;
    Integer c = 0;
    for (std::size_t i = 0; i < ambient_rank_; ++i)
      if (g[i] != 0) c += g[i] * V_(i, j);
    if (d == 0)
      free_part.push_back(c);
    else
      torsion_part.push_back(mod(c, d));
  }
  torsion_part.insert(torsion_part.end(), free_part.begin(), free_part.end());
  return torsion_part;
}

GroupElement FgAbelianGroup::from_canonical(const std::vector<Integer>& canonical) const {
  if (canonical.size() != torsion_.size() + free_rank_)
    throw InvariantViolation("canonical coordinate vector has wrong length");
  std::vector<Integer> c(ambient_rank_);
  std::size_t k = 0;
  for (std::size_t j = 0; j < ambient_rank_; ++j)
    if (diagonal_[j] != 1) c[j] = canonical[k++];
  std::vector<Integer> g(ambient_rank_);
  for (std::size_t j = 0; j < ambient_rank_; ++j) {
    if (c[j] == 0) continue;
    for (std::size_t i = 0; i < ambient_rank_; ++i) g[i] += c[j] * V_inverse_(j, i);
  }
  return GroupElement(std::move(g));
}

std::vector<GroupElement> FgAbelianGroup::canonical_generators() const {
  std::vector<GroupElement> out;
  const std::size_t n = torsion_.size() + free_rank_;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> c(n);
    c[i] = 1;
    out.push_back(from_canonical(c));
  }
  return out;
}

bool FgAbelianGroup::is_zero(const GroupElement& g) const {
  for (const auto& c : canonical_coordinates(g))
    if (c != 0) return false;
  return true;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank_ > 1) os << '^' << free_rank_;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupHomomorphism

GroupHomomorphism::GroupHomomorphism(FgAbelianGroup domain, FgAbelianGroup codomain,
                                     std::vector<GroupElement> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.ambient_rank())
    throw InputError("homomorphism needs one image per domain generator");
  for (const auto& im : images_)
    if (im.rank() != codomain_.ambient_rank()) throw InputError("homomorphism image has wrong rank");
  const auto& rel = domain_.relations();
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    GroupElement sum = codomain_.zero();
    for (std::size_t j = 0; j < rel.cols(); ++j)
      if (rel(i, j) != 0) sum += rel(i, j) * images_[j];
    if (!codomain_.is_zero(sum))
      throw InputError("homomorphism does not respect domain relation " + GroupElement(rel.row(i)).to_string());
  }
}

GroupElement GroupHomomorphism::operator()(const GroupElement& g) const {
  if (g.rank() != domain_.ambient_rank()) throw InvariantViolation("homomorphism argument has wrong rank");
  GroupElement out = codomain_.zero();
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (g[i] != 0) out += g[i] * images_[i];
  return out;
}

// ---------------------------------------------------------------------------
// operations

std::optional<Integer> element_order(const FgAbelianGroup& g, const GroupElement& x) {
  const auto c = g.canonical_coordinates(x);
  const auto& t = g.torsion();
  for (std::size_t i = t.size(); i < c.size(); ++i)
    if (c[i] != 0) return std::nullopt;
  Integer n = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Integer gi = gcd(c[i], t[i]);
    n = lcm(n, t[i] / gi);
  }
  return n;
}

Quotient quotient_group(const FgAbelianGroup& g, const std::vector<GroupElement>& subgroup_gens) {
  IntegerMatrix rel = g.relations();
  for (const auto& s : subgroup_gens) {
    if (s.rank() != g.ambient_rank()) throw InputError("subgroup generator has wrong rank");
    rel.append_row(s.coords());
  }
  FgAbelianGroup q(g.ambient_rank(), rel);
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < g.ambient_rank(); ++i) images.push_back(q.generator(i));
  GroupHomomorphism proj(g, q, std::move(images));
  return {std::move(q), std::move(proj)};
}

bool in_subgroup(const FgAbelianGroup& g, const std::vector<GroupElement>& gens, const GroupElement& x) {
  return quotient_group(g, gens).group.is_zero(x);
}

namespace {

IntegerMatrix stacked(const FgAbelianGroup& g, const std::vector<GroupElement>& gens) {
  IntegerMatrix m(0, g.ambient_rank());
  for (const auto& s : gens) {
    if (s.rank() != g.ambient_rank()) throw InputError("subgroup generator has wrong rank");
    m.append_row(s.coords());
  }
  const auto& rel = g.relations();
  for (std::size_t i = 0; i < rel.rows(); ++i) m.append_row(rel.row(i));
  return m;
}

}  // namespace

std::optional<std::vector<Integer>> express_in_generators(const FgAbelianGroup& g,
                                                          const std::vector<GroupElement>& gens,
                                                          const GroupElement& x) {
  const IntegerMatrix m = stacked(g, gens);
  const SmithForm f = smith_normal_form(m);
  const std::size_t n = g.ambient_rank();
  // solve y * S = x * V, then lambda = (y * U)[0 .. gens)
  std::vector<Integer> h(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] != 0) h[j] += x[i] * f.V(i, j);
  std::vector<Integer> y(m.rows());
  for (std::size_t j = 0; j < n; ++j) {
    if (j < f.rank) {
      if (mod(h[j], f.S(j, j)) != 0) return std::nullopt;
      y[j] = h[j] / f.S(j, j);
    } else if (h[j] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> lambda(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (y[i] != 0) lambda[k] += y[i] * f.U(i, k);
  return lambda;
}

FgAbelianGroup subgroup_presentation(const FgAbelianGroup& g, const std::vector<GroupElement>& gens) {
  const IntegerMatrix m = stacked(g, gens);
  const SmithForm f = smith_normal_form(m);
  IntegerMatrix rel(0, gens.size());
  for (std::size_t i = f.rank; i < m.rows(); ++i) {
    std::vector<Integer> r(gens.size());
    bool nonzero = false;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      r[k] = f.U(i, k);
      nonzero = nonzero || r[k] != 0;
    }
    if (nonzero) rel.append_row(r);
  }
  return FgAbelianGroup(gens.size(), rel);
}

PushoutRoot pushout_root(const FgAbelianGroup& a, const GroupElement& cls, const Integer& n) {
  if (n < 1) throw InputError("root order must be positive");
  if (cls.rank() != a.ambient_rank()) throw InputError("root class has wrong rank");
  const std::size_t r = a.ambient_rank();
  IntegerMatrix rel(0, r + 1);
  const auto& old = a.relations();
  for (std::size_t i = 0; i < old.rows(); ++i) {
    auto row = old.row(i);
    row.emplace_back(0);
    rel.append_row(row);
  }
  auto root_row = cls.coords();
  root_row.emplace_back(-n);
  rel.append_row(root_row);
  FgAbelianGroup b(r + 1, rel);
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < r; ++i) images.push_back(b.generator(i));
  GroupHomomorphism incl(a, b, std::move(images));
  GroupElement delta = b.generator(r);
  return {std::move(b), std::move(incl), std::move(delta)};
}

std::vector<std::vector<Integer>> kernel_basis_mod_p(const std::vector<Integer>& classes, const Integer& p) {
  std::vector<Integer> m;
  for (const auto& c : classes) m.push_back(mod(c, p));
  std::optional<std::size_t> pivot;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (m[j] != 0) pivot = j;
  if (!pivot) throw DegenerateDegreeData();
  Integer inv;
  mpz_invert(inv.get_mpz_t(), m[*pivot].get_mpz_t(), p.get_mpz_t());
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j == *pivot) continue;
    std::vector<Integer> c(m.size());
    c[j] = 1;
    c[*pivot] = mod(-m[j] * inv, p);
    basis.push_back(std::move(c));
  }
  return basis;
}

namespace {

using Row = std::vector<long long>;

long long inverse_mod(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    long long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return ((t % p) + p) % p;
}

// Rank of the augmented system restricted to columns >= first; rhs is the last entry.
struct Elimination {
  std::size_t rank = 0;
  bool consistent = true;
};

Elimination eliminate(std::vector<Row> rows, std::size_t first, std::size_t unknowns, long long p) {
  Elimination e;
  std::size_t r = 0;
  for (std::size_t col = first; col < unknowns && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const long long inv = inverse_mod(rows[r][col], p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const long long f = rows[i][col];
      for (std::size_t k = 0; k <= unknowns; ++k) rows[i][k] = ((rows[i][k] - f * rows[r][k]) % p + p) % p;
    }
    ++r;
  }
  e.rank = r;
  for (std::size_t i = r; i < rows.size(); ++i) {
    bool zero_row = true;
    for (std::size_t k = first; k < unknowns; ++k) zero_row = zero_row && rows[i][k] == 0;
    if (zero_row && rows[i][unknowns] != 0) e.consistent = false;
  }
  return e;
}

}  // namespace

AffineSolution solve_affine_mod_p(const std::vector<std::vector<Integer>>& matrix,
                                  const std::vector<Integer>& rhs, std::size_t unknowns,
                                  const Integer& p) {
  if (matrix.size() != rhs.size()) throw InputError("affine system: row count mismatch");
  if (p < 2 || !p.fits_sint_p() || p > Integer(std::numeric_limits<int>::max()))
    throw InputError("affine system: modulus out of range");
  const long long q = p.get_si();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != unknowns) throw InputError("affine system: row has wrong length");
    Row r(unknowns + 1);
    for (std::size_t j = 0; j < unknowns; ++j) r[j] = mod(matrix[i][j], p).get_si();
    r[unknowns] = mod(rhs[i], p).get_si();
    rows.push_back(std::move(r));
  }

  AffineSolution out;
  const Elimination full = eliminate(rows, 0, unknowns, q);
  out.rank = full.rank;
  if (!full.consistent) {
    out.solution_count = 0;
    return out;
  }
  mpz_pow_ui(out.solution_count.get_mpz_t(), p.get_mpz_t(), unknowns - full.rank);

  // Greedy: fix each unknown to the least value that keeps the rest consistent.
  std::vector<Integer> x(unknowns);
  for (std::size_t j = 0; j < unknowns; ++j) {
    bool placed = false;
    for (long long v = 0; v < q && !placed; ++v) {
      auto trial = rows;
      for (auto& r : trial) {
        r[unknowns] = ((r[unknowns] - r[j] * v) % q + q) % q;
        r[j] = 0;
      }
      if (eliminate(trial, j + 1, unknowns, q).consistent) {
        rows = std::move(trial);
        x[j] = static_cast<long>(v);
        placed = true;
      }
    }
    if (!placed) throw InvariantViolation("affine system: greedy completion failed");
  }
  out.solution = std::move(x);
  return out;
}

std::optional<GroupElement> solve_linear_over_group(
    const FgAbelianGroup& g, const std::vector<std::pair<Integer, GroupElement>>& equations) {
  const auto& torsion = g.torsion();
  const std::size_t nt = torsion.size();
  std::vector<std::vector<Integer>> targets;
  for (const auto& [k, t] : equations) targets.push_back(g.canonical_coordinates(t));

  std::vector<Integer> solution(nt + g.free_rank());
  for (std::size_t i = 0; i < nt; ++i) {
    const Integer& d = torsion[i];
    // running solution set x == r (mod m)
    Integer r = 0, m = 1;
    for (std::size_t e = 0; e < equations.size(); ++e) {
      const Integer a = mod(equations[e].first, d);
      const Integer b = targets[e][i];
      const Integer gd = gcd(a, d);
      if (mod(b, gd) != 0) return std::nullopt;
      const Integer m2 = d / gd;
      Integer x0 = 0;
      if (m2 != 1) {
        Integer inv;
        Integer a2 = a / gd;
        mpz_invert(inv.get_mpz_t(), a2.get_mpz_t(), m2.get_mpz_t());
        x0 = mod((b / gd) * inv, m2);
      }
      // combine x == r (m) with x == x0 (m2)
      const Integer g2 = gcd(m, m2);
      if (mod(x0 - r, g2) != 0) return std::nullopt;
      const Integer l = lcm(m, m2);
      if (m == 1) {
        r = x0;
      } else if (m2 != 1) {
        Integer inv;
        Integer mg = m / g2, m2g = m2 / g2;
        if (m2g == 1)
          inv = 0;
        else
          mpz_invert(inv.get_mpz_t(), mg.get_mpz_t(), m2g.get_mpz_t());
        r = mod(r + m * mod(((x0 - r) / g2) * inv, m2g), l);
      }
      m = l;
    }
    solution[i] = mod(r, m);
  }
  for (std::size_t i = nt; i < solution.size(); ++i) {
    std::optional<Integer> forced;
    for (std::size_t e = 0; e < equations.size(); ++e) {
      const Integer& k = equations[e].first;
      const Integer& t = targets[e][i];
      if (k == 0) {
        if (t != 0) return std::nullopt;
        continue;
      }
      if (mod(t, abs(k)) != 0) return std::nullopt;
      const Integer v = t / k;
      if (forced && *forced != v) return std::nullopt;
      forced = v;
    }
    solution[i] = forced.value_or(0);
  }
  return g.from_canonical(solution);
}

}  // namespace coxlift
