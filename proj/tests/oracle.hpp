#pragma once

// Reference implementations shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kwall/lattice.hpp"
#include "kwall/positivity.hpp"
#include "kwall/surface.hpp"

namespace kwall::oracle {

struct Decomposition {
  DivClass positive;
  std::vector<std::pair<std::string, Rational>> negative;  // sorted by name, positive coefficients only
};

// Enumerates every subset of Mori generators; keeps those whose Gram matrix is negative
// definite, whose solved coefficients are all positive, and whose remainder is nef.
class SubsetOracle {
 public:
  explicit SubsetOracle(const SurfaceModel& m) : m_(m) {
    size_t n = m.mori().size();
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
      std::vector<size_t> idx;
      for (size_t i = 0; i < n; ++i)
        if (mask >> i & 1) idx.push_back(i);
      Mat g(idx.size(), Vec(idx.size()));
      for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b) g[a][b] = pair(m.mori()[idx[a]].cls, m.mori()[idx[b]].cls);
      if (negative_definite(g)) subsets_.push_back({idx, g});
    }
  }

  size_t negative_definite_subsets() const { return subsets_.size(); }

  std::vector<Decomposition> decompose(const DivClass& d) const {
    std::vector<Decomposition> out;
    if (nef(d)) out.push_back({d, {}});
    for (const auto& s : subsets_) {
      Vec rhs;
      for (size_t i : s.idx) rhs.push_back(pair(d, m_.mori()[i].cls));
      Vec x = solve_linear(s.gram, rhs);
      bool positive = true;
      for (const auto& v : x) positive = positive && v.sign() > 0;
      if (!positive) continue;
      DivClass p = d;
      for (size_t a = 0; a < s.idx.size(); ++a) p -= x[a] * m_.mori()[s.idx[a]].cls;
      if (!nef(p)) continue;
      Decomposition dec{p, {}};
      for (size_t a = 0; a < s.idx.size(); ++a) dec.negative.emplace_back(m_.mori()[s.idx[a]].name, x[a]);
      std::sort(dec.negative.begin(), dec.negative.end());
      out.push_back(std::move(dec));
    }
    return out;
  }

 private:
  struct Subset {
    std::vector<size_t> idx;
    Mat gram;
  };
  bool nef(const DivClass& d) const {
    for (const auto& g : m_.mori())
      if (pair(d, g.cls).sign() < 0) return false;
    return true;
  }
  const SurfaceModel& m_;
  std::vector<Subset> subsets_;
};

// nonnegative combination of Mori generators, sometimes plus a multiple of -K_X
inline DivClass random_pseudo_effective(const SurfaceModel& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(0, 6), coin(0, 2), den(1, 3);
  while (true) {
    DivClass d = DivClass::zero(m.lattice());
    for (const auto& g : m.mori())
      if (coin(rng) == 0) d += Rational(coef(rng), den(rng)) * g.cls;
    if (coin(rng) == 0) d += Rational(coef(rng), den(rng)) * m.anticanonical();
    if (!d.is_zero()) return d;
  }
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps,
                               int depth = 50) {
  auto simpson = [&](double lo, double hi, double flo, double fm, double fhi) {
    return (hi - lo) / 6 * (flo + 4 * fm + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fm, double fhi, double whole, double e, int k) {
        double m = (lo + hi) / 2, lm = (lo + m) / 2, rm = (m + hi) / 2;
        double flm = f(lm), frm = f(rm);
        double left = simpson(lo, m, flo, flm, fm), right = simpson(m, hi, fm, frm, fhi);
        if (k <= 0 || std::fabs(left + right - whole) <= 15 * e) return left + right + (left + right - whole) / 15;
        return rec(lo, m, flo, flm, fm, left, e / 2, k - 1) + rec(m, hi, fm, frm, fhi, right, e / 2, k - 1);
      };
  double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), eps, depth);
}

// Empty result means every property holds.
inline std::vector<std::string> profile_violations(const SurfaceModel& ambient, const DivClass& origin,
                                                   const DivClass& dir, const VolumeProfile& p,
                                                   const Rational& degree) {
  std::vector<std::string> bad;
  if (p.pieces.empty()) return {"no pieces"};
  if (!p.pieces.front().t_lo.is_zero()) bad.push_back("does not start at 0");
  if (p.pieces.front().value(0) != degree) bad.push_back("vol(0) = " + p.pieces.front().value(0).str());
  if (!p.pieces.back().value(p.tau).is_zero()) bad.push_back("vol(tau) = " + p.pieces.back().value(p.tau).str());
  if (p.pieces.back().t_hi != p.tau) bad.push_back("last piece does not end at tau");
  for (size_t i = 0; i < p.pieces.size(); ++i) {
    const auto& c = p.pieces[i];
    if (!(c.t_lo < c.t_hi)) bad.push_back("empty piece " + std::to_string(i));
    for (const Rational& t : {c.t_lo, c.t_hi})
      if ((c.q1 + Rational(2) * c.q2 * t).sign() > 0) bad.push_back("increasing at t = " + t.str());
    if (i + 1 < p.pieces.size()) {
      const auto& n = p.pieces[i + 1];
      if (n.t_lo != c.t_hi) bad.push_back("gap at " + c.t_hi.str());
      if (n.value(c.t_hi) != c.value(c.t_hi)) bad.push_back("discontinuous at " + c.t_hi.str());
      for (const auto& s : c.support)
        if (std::find(n.support.begin(), n.support.end(), s) == n.support.end())
          bad.push_back("support not nested at " + c.t_hi.str());
    }
    // independent Zariski decomposition at the chamber midpoint
    Rational mid = (c.t_lo + c.t_hi) / Rational(2);
    ZariskiResult z = zariski_decompose(ambient, origin - mid * dir);
    if (pair(z.positive, z.positive) != c.value(mid)) bad.push_back("P(t)^2 differs at t = " + mid.str());
  }
  Rational exact = integrate_profile(p);
  double approx = adaptive_simpson([&](double t) { return p.value(t); }, 0, p.tau.to_double(), 1e-13);
  double rel = std::fabs(approx - exact.to_double()) / std::max(1e-300, std::fabs(exact.to_double()));
  if (rel > 1e-9) bad.push_back("quadrature differs by " + std::to_string(rel));
  return bad;
}

}  // namespace kwall::oracle
