#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kwall/positivity.hpp"
#include "kwall/surface.hpp"

namespace kwall {

// const + slope*c
struct AffineRatFn {
  Rational c0, c1;
  Rational operator()(const Rational& c) const { return c0 + c1 * c; }
  friend AffineRatFn operator-(const AffineRatFn& a, const AffineRatFn& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  friend bool operator==(const AffineRatFn& a, const AffineRatFn& b) = default;
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  std::string str() const;  // "2/15 - 34/15 c"
  json to_json() const { return {{"const", c0.str()}, {"slope", c1.str()}}; }
};

struct BoundaryComponent {
  std::string name;
  DivClass cls;  // class on the resolution (proper transform)
  Rational mult;
};

struct LogPair {
  SurfacePtr surface;
  std::string name;
  std::vector<BoundaryComponent> boundary;
  Rational c_lo = 0, c_hi = Rational(1, 2);
};

// boundary must be -2K_X (checked on pullbacks); throws ConfigurationError
void validate_pair(const LogPair& p);

enum class Tag { plain, vertical, horizontal };
std::string to_string(Tag t);
Tag tag_from_string(const std::string& s);

struct ValuationSpec {
  std::string name;
  SurfacePtr surface;
  std::shared_ptr<const BlowupExtension> extension;  // null for a curve on the resolution
  DivClass e_class;                                  // on ambient()
  Rational a_x, ord_b;
  Tag tag = Tag::plain;

  const SurfaceModel& ambient() const { return extension ? *extension->model() : *surface; }
  DivClass origin() const;  // pi^*(-K_X) on ambient()
};

// a_x and ord_b derived from the surface and boundary data
ValuationSpec curve_valuation(const LogPair& p, const std::string& name, const std::optional<DivClass>& cls,
                              Tag tag = Tag::plain);
ValuationSpec blowup_valuation(const LogPair& p, const std::string& name, const BlowupCenter& center,
                               Tag tag = Tag::plain);

AffineRatFn log_discrepancy(const LogPair& p, const ValuationSpec& v);

struct SData {
  Rational s;  // S = s(1-2c)
  VolumeProfile profile;
};
SData s_data(const LogPair& p, const ValuationSpec& v);
AffineRatFn s_invariant(const LogPair& p, const ValuationSpec& v);
AffineRatFn beta(const LogPair& p, const ValuationSpec& v);

struct WallSolution {
  enum Kind { root, none, identically_zero } kind = none;
  Rational value;
};
WallSolution solve_wall(const AffineRatFn& b, const Rational& lo = 0, const Rational& hi = Rational(1, 2));

enum class Verdict { polystable, unstable, semistable_boundary };
std::string to_string(Verdict v);

struct Witness {
  std::string name;
  Tag tag;
  Rational beta;
  std::string reason;
};

struct PolystabilityResult {
  Verdict verdict = Verdict::polystable;
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::string, Rational>> betas;
  std::string note;
};

PolystabilityResult polystability_check(const LogPair& p, const std::vector<ValuationSpec>& vs, const Rational& c);

Rational pair_degree(const Rational& c);  // 5(1-2c)^2
Rational quotient_order_bound(const Rational& degree);
bool index_feasibility(long d, long n, const Rational& c, const Rational& ord_lower);
Rational vgit_slope(const Rational& c);

}  // namespace kwall
