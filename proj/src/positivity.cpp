#include "kwall/positivity.hpp"

#include <algorithm>

#include "kwall/errors.hpp"

namespace kwall {

NefResult is_nef(const SurfaceModel& m, const DivClass& d) {
  for (const auto& g : m.mori()) {
    Rational p = pair(d, g.cls);
    if (p.sign() < 0) return {false, g.name, p};
  }
  return {};
}

DivClass ZariskiResult::negative_class(const SurfaceModel& m) const {
  DivClass n = DivClass::zero(m.lattice());
  for (const auto& [name, a] : negative) n += a * m.cls(name);
  return n;
}

namespace {

Mat support_gram(const SurfaceModel& m, const std::vector<std::string>& supp) {
  Mat g;
  for (const auto& a : supp) {
    Vec row;
    for (const auto& b : supp) row.push_back(pair(m.cls(a), m.cls(b)));
    g.push_back(row);
  }
  if (!negative_definite(g)) {
    std::string s;
    for (const auto& a : supp) s += (s.empty() ? "" : ", ") + a;
    throw ConfigurationError(m.name() + ": support {" + s + "} is not negative definite");
  }
  return g;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

ZariskiResult zariski_decompose(const SurfaceModel& m, const DivClass& d) {
  if (d.lattice() != m.lattice()) throw LatticeMismatch();
  std::vector<std::string> supp;
  while (true) {
    Vec x;
    if (!supp.empty()) {
      Mat g = support_gram(m, supp);
      Vec rhs;
      for (const auto& a : supp) rhs.push_back(pair(d, m.cls(a)));
      x = solve_linear(g, rhs);
    }
    DivClass p = d;
    for (size_t i = 0; i < supp.size(); ++i) p -= x[i] * m.cls(supp[i]);
    std::vector<std::string> neg;
    for (const auto& gm : m.mori())
      if (!contains(supp, gm.name) && pair(p, gm.cls).sign() < 0) neg.push_back(gm.name);
    if (neg.empty()) {
      ZariskiResult r{p, {}};
      for (size_t i = 0; i < supp.size(); ++i) {
        if (x[i].sign() < 0)
          throw NotPseudoEffective(m.name() + ": negative coefficient " + x[i].str() + " on " + supp[i]);
        if (!x[i].is_zero()) r.negative.emplace_back(supp[i], x[i]);
      }
      return r;
    }
    supp.insert(supp.end(), neg.begin(), neg.end());
    bool all = supp.size() == m.mori().size();
    try {
      support_gram(m, supp);
    } catch (const ConfigurationError&) {
      if (all || pair(d, m.anticanonical()).sign() < 0)
        throw NotPseudoEffective(m.name() + ": class is not pseudo-effective (witness " + neg.front() + ")");
      throw;
    }
  }
}

Rational VolumeProfile::value(const Rational& t) const {
  if (t.sign() < 0 || t > tau) throw DomainError("t = " + t.str() + " outside [0, " + tau.str() + "]");
  for (const auto& p : pieces)
    if (t <= p.t_hi) return p.value(t);
  return 0;
}

double VolumeProfile::value(double t) const {
  for (const auto& p : pieces)
    if (t <= p.t_hi.to_double()) return p.q0.to_double() + p.q1.to_double() * t + p.q2.to_double() * t * t;
  return 0;
}

VolumeProfile volume_profile(const SurfaceModel& m, const DivClass& origin, const DivClass& direction) {
  if (origin.lattice() != m.lattice() || direction.lattice() != m.lattice()) throw LatticeMismatch();
  NefResult nef = is_nef(m, origin);
  if (!nef.nef) throw DomainError("origin is not nef (pairs " + nef.witness_pairing.str() + " with " + *nef.witness + ")");
  if (pair(origin, origin).sign() <= 0) throw DomainError("origin is not big: vol(0) = " + pair(origin, origin).str());
  if (direction.is_zero()) throw DomainError("zero direction");

  VolumeProfile prof;
  Rational t0 = 0;
  std::vector<std::string> supp;
  while (true) {
    // P(t) = P0 + t P1 inside the chamber
    DivClass p0 = origin, p1 = -direction;
    if (!supp.empty()) {
      Mat g = support_gram(m, supp);
      Vec r0, r1;
      for (const auto& a : supp) {
        r0.push_back(pair(origin, m.cls(a)));
        r1.push_back(-pair(direction, m.cls(a)));
      }
      Vec x0 = solve_linear(g, r0), x1 = solve_linear(g, r1);
      for (size_t i = 0; i < supp.size(); ++i) {
        p0 -= x0[i] * m.cls(supp[i]);
        p1 -= x1[i] * m.cls(supp[i]);
      }
    }
    Rational q0 = pair(p0, p0), q1 = Rational(2) * pair(p0, p1), q2 = pair(p1, p1);

    std::optional<Rational> best;
    std::vector<std::string> tie, enter;
    for (const auto& gm : m.mori()) {
      if (contains(supp, gm.name)) continue;
      Rational a = pair(p0, gm.cls), b = pair(p1, gm.cls);
      if (b.sign() >= 0) continue;
      Rational r = -a / b;
      if (r <= t0) {
        enter.push_back(gm.name);
        continue;
      }
      if (!best || r < *best) {
        best = r;
        tie = {gm.name};
      } else if (r == *best) {
        tie.push_back(gm.name);
      }
    }
    if (!enter.empty()) {
      supp.insert(supp.end(), enter.begin(), enter.end());
      continue;
    }
    auto val = [&](const Rational& t) { return q0 + q1 * t + q2 * t * t; };
    if (best && val(*best).sign() > 0) {
      prof.pieces.push_back({t0, *best, q0, q1, q2, supp});
      supp.insert(supp.end(), tie.begin(), tie.end());
      t0 = *best;
      continue;
    }
    // vol reaches 0 inside this chamber
    std::vector<Rational> roots;
    if (q2.is_zero()) {
      if (q1.is_zero()) throw NotPseudoEffective("volume is constant along the ray");
      roots.push_back(-q0 / q1);
    } else {
      Rational disc = q1 * q1 - Rational(4) * q0 * q2;
      auto s = disc.sqrt();
      if (!s) throw EngineError("big threshold is irrational (discriminant " + disc.str() + ")");
      roots.push_back((-q1 - *s) / (Rational(2) * q2));
      roots.push_back((-q1 + *s) / (Rational(2) * q2));
    }
    std::sort(roots.begin(), roots.end());
    auto it = std::find_if(roots.begin(), roots.end(),
                           [&](const Rational& r) { return r > t0 && (!best || r <= *best); });
    if (it == roots.end()) throw NotPseudoEffective("ray never leaves the big cone");
    prof.pieces.push_back({t0, *it, q0, q1, q2, supp});
    prof.tau = *it;
    return prof;
  }
}

Rational integrate_profile(const VolumeProfile& p) {
  Rational s;
  for (const auto& c : p.pieces) {
    const Rational &a = c.t_lo, &b = c.t_hi;
    s += c.q0 * (b - a) + c.q1 * (b * b - a * a) / Rational(2) + c.q2 * (b * b * b - a * a * a) / Rational(3);
  }
  return s;
}

json profile_to_json(const VolumeProfile& p) {
  json pieces = json::array();
  for (const auto& c : p.pieces)
    pieces.push_back({{"t_lo", c.t_lo.str()},
                      {"t_hi", c.t_hi.str()},
                      {"q0", c.q0.str()},
                      {"q1", c.q1.str()},
                      {"q2", c.q2.str()},
                      {"support", c.support}});
  return {{"pieces", pieces}, {"tau", p.tau.str()}};
}

}  // namespace kwall
