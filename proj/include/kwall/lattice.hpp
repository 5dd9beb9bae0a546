#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kwall/rational.hpp"

namespace kwall {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

class IntersectionLattice {
 public:
  // gram must be square and match basis_names; symmetry is checked by validate_lattice
  static std::shared_ptr<const IntersectionLattice> make(std::vector<std::string> basis_names, Mat gram);

  size_t rank() const { return names_.size(); }
  const Mat& gram() const { return gram_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  std::optional<size_t> index_of(const std::string& name) const;

 private:
  IntersectionLattice(std::vector<std::string> n, Mat g) : names_(std::move(n)), gram_(std::move(g)) {}
  std::vector<std::string> names_;
  Mat gram_;
};

using LatticePtr = std::shared_ptr<const IntersectionLattice>;

struct LatticeReport {
  bool symmetric = false;
  bool signature_ok = false;
  int positive = 0, negative = 0, zero = 0;
  std::string failure;  // empty when ok
  bool ok() const { return symmetric && signature_ok; }
};

LatticeReport validate_lattice(const IntersectionLattice& l);

class DivClass {
 public:
  DivClass(LatticePtr l, Vec coords);
  static DivClass zero(LatticePtr l);
  static DivClass basis(LatticePtr l, size_t i);

  const Vec& coords() const { return c_; }
  const Rational& operator[](size_t i) const { return c_[i]; }
  const LatticePtr& lattice() const { return l_; }
  bool is_zero() const;
  bool is_integral() const;

  DivClass& operator+=(const DivClass& o);
  DivClass& operator-=(const DivClass& o);
  DivClass& operator*=(const Rational& s);
  friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
  friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
  friend DivClass operator*(const Rational& s, DivClass a) { return a *= s; }
  DivClass operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const DivClass& a, const DivClass& b);

 private:
  LatticePtr l_;
  Vec c_;
};

Rational pair(const DivClass& a, const DivClass& b);

// unique solution of M x = rhs; throws SingularSystem
Vec solve_linear(const Mat& m, const Vec& rhs);
Rational determinant(Mat m);
// all leading principal minors of -m positive
bool negative_definite(const Mat& m);
Vec mat_vec(const Mat& m, const Vec& x);

std::string format_vec(const Vec& v);

}  // namespace kwall
