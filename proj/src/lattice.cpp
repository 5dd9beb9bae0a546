#include "kwall/lattice.hpp"

#include <algorithm>

#include "kwall/errors.hpp"

namespace kwall {

std::shared_ptr<const IntersectionLattice> IntersectionLattice::make(std::vector<std::string> basis_names,
                                                                     Mat gram) {
  if (basis_names.empty()) throw ConfigurationError("lattice of rank 0");
  if (gram.size() != basis_names.size()) throw ConfigurationError("gram size does not match basis");
  for (const auto& row : gram)
    if (row.size() != basis_names.size()) throw ConfigurationError("gram is not square");
  return std::shared_ptr<const IntersectionLattice>(new IntersectionLattice(std::move(basis_names), std::move(gram)));
}

std::optional<size_t> IntersectionLattice::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<size_t>(it - names_.begin());
}

LatticeReport validate_lattice(const IntersectionLattice& l) {
  LatticeReport r;
  const Mat& g = l.gram();
  size_t n = l.rank();
  r.symmetric = true;
  for (size_t i = 0; i < n && r.symmetric; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (g[i][j] != g[j][i]) {
        r.symmetric = false;
        r.failure = "symmetry: gram[" + std::to_string(i) + "][" + std::to_string(j) + "] != gram[" +
                    std::to_string(j) + "][" + std::to_string(i) + "]";
        break;
      }
  if (!r.symmetric) return r;

  // congruence diagonalization
  Mat a = g;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k].is_zero()) {
      size_t p = k + 1;
      while (p < n && a[p][p].is_zero()) ++p;
      if (p < n) {
        std::swap(a[k], a[p]);
        for (auto& row : a) std::swap(row[k], row[p]);
      } else {
        p = k + 1;
        while (p < n && a[k][p].is_zero()) ++p;
        if (p == n) {
          ++r.zero;
          continue;
        }
        // e_k += e_p makes the diagonal entry 2 a_kp
        for (size_t j = 0; j < n; ++j) a[k][j] += a[p][j];
        for (size_t i = 0; i < n; ++i) a[i][k] += a[i][p];
      }
    }
    Rational piv = a[k][k];
    (piv.sign() > 0 ? r.positive : r.negative)++;
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      Rational f = a[i][k] / piv;
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  r.signature_ok = r.positive == 1 && r.negative == static_cast<int>(n) - 1 && r.zero == 0;
  if (!r.signature_ok)
    r.failure = "signature: (" + std::to_string(r.positive) + ", " + std::to_string(r.negative) + ", " +
                std::to_string(r.zero) + ") expected (1, " + std::to_string(n - 1) + ", 0)";
  return r;
}

DivClass::DivClass(LatticePtr l, Vec coords) : l_(std::move(l)), c_(std::move(coords)) {
  if (!l_) throw ConfigurationError("class without lattice");
  if (c_.size() != l_->rank())
    throw ConfigurationError("class has " + std::to_string(c_.size()) + " coordinates, lattice rank is " +
                             std::to_string(l_->rank()));
}

DivClass DivClass::zero(LatticePtr l) {
  size_t n = l->rank();
  return DivClass(std::move(l), Vec(n));
}

DivClass DivClass::basis(LatticePtr l, size_t i) {
  DivClass d = zero(std::move(l));
  d.c_.at(i) = 1;
  return d;
}

bool DivClass::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.is_zero(); });
}

bool DivClass::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.is_integer(); });
}

DivClass& DivClass::operator+=(const DivClass& o) {
  if (l_ != o.l_) throw LatticeMismatch();
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

DivClass& DivClass::operator-=(const DivClass& o) {
  if (l_ != o.l_) throw LatticeMismatch();
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

DivClass& DivClass::operator*=(const Rational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

bool operator==(const DivClass& a, const DivClass& b) {
  if (a.l_ != b.l_) throw LatticeMismatch();
  return a.c_ == b.c_;
}

Rational pair(const DivClass& a, const DivClass& b) {
  if (a.lattice() != b.lattice()) throw LatticeMismatch();
  const Mat& g = a.lattice()->gram();
  Rational s;
  for (size_t i = 0; i < g.size(); ++i) {
    if (a[i].is_zero()) continue;
    Rational row;
    for (size_t j = 0; j < g.size(); ++j)
      if (!b[j].is_zero() && !g[i][j].is_zero()) row += g[i][j] * b[j];
    s += a[i] * row;
  }
  return s;
}

Vec solve_linear(const Mat& m, const Vec& rhs) {
  size_t n = m.size();
  if (rhs.size() != n) throw ConfigurationError("right-hand side has wrong length");
  for (const auto& row : m)
    if (row.size() != n) throw ConfigurationError("solve_linear needs a square matrix");
  Mat a = m;
  Vec b = rhs;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw SingularSystem();
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
      b[i] -= f * b[c];
    }
  }
  Vec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

Rational determinant(Mat a) {
  size_t n = a.size();
  Rational d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[c], a[p]);
      d = -d;
    }
    d *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
    }
  }
  return d;
}

bool negative_definite(const Mat& m) {
  size_t n = m.size();
  for (size_t k = 1; k <= n; ++k) {
    Mat sub(k, Vec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sub[i][j] = -m[i][j];
    if (determinant(std::move(sub)).sign() <= 0) return false;
  }
  return true;
}

Vec mat_vec(const Mat& m, const Vec& x) {
  Vec y(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

std::string format_vec(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

}  // namespace kwall
