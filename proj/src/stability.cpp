#include "kwall/stability.hpp"

#include <algorithm>

#include "kwall/errors.hpp"

namespace kwall {

std::string AffineRatFn::str() const {
  if (c1.is_zero()) return c0.str();
  std::string slope = c1.abs() == Rational(1) ? "" : c1.abs().str() + " ";
  if (c0.is_zero()) return (c1.sign() < 0 ? "-" : "") + slope + "c";
  return c0.str() + (c1.sign() < 0 ? " - " : " + ") + slope + "c";
}

void validate_pair(const LogPair& p) {
  const SurfaceModel& m = *p.surface;
  if (p.boundary.empty()) return;
  DivClass total = DivClass::zero(m.lattice());
  for (const auto& b : p.boundary) {
    if (b.mult.sign() <= 0) throw ConfigurationError(p.name + ": multiplicity of " + b.name + " is not positive");
    total += b.mult * pullback_weil(m, b.cls);
  }
  DivClass want = Rational(2) * m.anticanonical();
  if (!(total == want))
    throw ConfigurationError(p.name + ": boundary class " + format_vec(total.coords()) + " is not -2K_X = " +
                             format_vec(want.coords()));
  if (!(p.c_lo < p.c_hi)) throw ConfigurationError(p.name + ": empty coefficient range");
}

std::string to_string(Tag t) {
  switch (t) {
    case Tag::vertical: return "vertical";
    case Tag::horizontal: return "horizontal";
    default: return "plain";
  }
}

Tag tag_from_string(const std::string& s) {
  if (s == "plain") return Tag::plain;
  if (s == "vertical") return Tag::vertical;
  if (s == "horizontal") return Tag::horizontal;
  throw InputError("unknown tag '" + s + "'");
}

DivClass ValuationSpec::origin() const {
  DivClass o = surface->anticanonical();
  return extension ? extension->pullback(o) : o;
}

ValuationSpec curve_valuation(const LogPair& p, const std::string& name, const std::optional<DivClass>& cls,
                              Tag tag) {
  const SurfaceModel& m = *p.surface;
  DivClass e = cls ? *cls : m.cls(name);
  if (e.lattice() != m.lattice()) throw LatticeMismatch();
  Rational a = 1, ord = 0;
  if (m.is_contracted(name)) {
    a += m.k_discrepancy(name);
    size_t j = std::find(m.contracted().begin(), m.contracted().end(), name) - m.contracted().begin();
    for (const auto& b : p.boundary) ord += b.mult * pullback_coefficients(m, b.cls)[j];
  } else {
    for (const auto& b : p.boundary)
      if (b.name == name) ord += b.mult;
  }
  return {name, p.surface, nullptr, e, a, ord, tag};
}

ValuationSpec blowup_valuation(const LogPair& p, const std::string& name, const BlowupCenter& center, Tag tag) {
  const SurfaceModel& m = *p.surface;
  auto ext = std::make_shared<const BlowupExtension>(build_blowup_extension(p.surface, center));
  auto ord_of = [&](const std::string& k) -> Rational {
    auto it = center.ord.find(k);
    if (it != center.ord.end()) return it->second;
    for (const auto& x : center.extra)
      if (x.name == k) return x.ord;
    return 0;
  };
  Rational ord = 0;
  for (const auto& b : p.boundary) {
    Rational o = ord_of(b.name);
    auto c = pullback_coefficients(m, b.cls);
    for (size_t j = 0; j < c.size(); ++j) o += c[j] * ord_of(m.contracted()[j]);
    ord += b.mult * o;
  }
  return {name, p.surface, ext, ext->e_class(), ext->a_over_base(), ord, tag};
}

AffineRatFn log_discrepancy(const LogPair&, const ValuationSpec& v) { return {v.a_x, -v.ord_b}; }

SData s_data(const LogPair& p, const ValuationSpec& v) {
  DivClass o = v.origin();
  VolumeProfile prof = volume_profile(v.ambient(), o, v.e_class);
  Rational deg = pair(o, o);
  if (deg != p.surface->degree()) throw EngineError("pulled-back anticanonical class changed degree");
  return {integrate_profile(prof) / deg, std::move(prof)};
}

AffineRatFn s_invariant(const LogPair& p, const ValuationSpec& v) {
  Rational s = s_data(p, v).s;
  return {s, p.boundary.empty() ? Rational(0) : Rational(-2) * s};
}

AffineRatFn beta(const LogPair& p, const ValuationSpec& v) { return log_discrepancy(p, v) - s_invariant(p, v); }

WallSolution solve_wall(const AffineRatFn& b, const Rational& lo, const Rational& hi) {
  if (b.is_zero()) return {WallSolution::identically_zero, 0};
  if (b.c1.is_zero()) return {};
  Rational r = -b.c0 / b.c1;
  if (lo < r && r < hi) return {WallSolution::root, r};
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::polystable: return "POLYSTABLE";
    case Verdict::unstable: return "UNSTABLE";
    default: return "SEMISTABLE-BOUNDARY";
  }
}

PolystabilityResult polystability_check(const LogPair& p, const std::vector<ValuationSpec>& vs, const Rational& c) {
  if (vs.empty()) throw ConfigurationError("polystability check needs the equivariant valuation list");
  PolystabilityResult r;
  r.note = "Futaki condition evaluated as: every horizontal beta vanishes";
  std::vector<Witness> negative, horizontal, boundary;
  for (const auto& v : vs) {
    if (v.tag == Tag::plain) throw ConfigurationError(v.name + ": polystability needs a vertical/horizontal tag");
    Rational b = beta(p, v)(c);
    r.betas.emplace_back(v.name, b);
    if (b.sign() < 0) negative.push_back({v.name, v.tag, b, "beta < 0"});
    else if (v.tag == Tag::horizontal && !b.is_zero())
      horizontal.push_back({v.name, v.tag, b, "horizontal beta != 0"});
    else if (v.tag == Tag::vertical && b.is_zero())
      boundary.push_back({v.name, v.tag, b, "vertical beta = 0"});
  }
  if (!negative.empty() || !horizontal.empty()) {
    r.verdict = Verdict::unstable;
    r.witnesses = negative;
    r.witnesses.insert(r.witnesses.end(), horizontal.begin(), horizontal.end());
  } else if (!boundary.empty()) {
    r.verdict = Verdict::semistable_boundary;
    r.witnesses = boundary;
  }
  return r;
}

Rational pair_degree(const Rational& c) {
  Rational u = Rational(1) - Rational(2) * c;
  return Rational(5) * u * u;
}

Rational quotient_order_bound(const Rational& degree) {
  if (degree.sign() <= 0) throw DomainError("degree must be positive");
  return Rational(9) / degree;
}

bool index_feasibility(long d, long n, const Rational& c, const Rational& ord_lower) {
  if (d < 1 || n < 1) throw DomainError("d and n must be positive");
  if (!(c.sign() > 0 && c < Rational(1, 2))) throw DomainError("c must lie in (0, 1/2)");
  if (ord_lower.sign() < 0) throw DomainError("ord must be nonnegative");
  Rational lhs = Rational(d * n * n) * Rational(4, 9) * pair_degree(c);
  Rational r = Rational(2) - c * ord_lower;
  return lhs <= r * r;
}

Rational vgit_slope(const Rational& c) {
  if (c < Rational(1, 4) || !(c < Rational(1, 2))) throw DomainError("vgit_slope needs 1/4 <= c < 1/2, got " + c.str());
  return (Rational(25) - Rational(20) * c) / (Rational(28) * c + Rational(1));
}

}  // namespace kwall
