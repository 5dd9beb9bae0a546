#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kwall/surface.hpp"

namespace kwall {

struct NefResult {
  bool nef = true;
  std::optional<std::string> witness;  // first Mori generator with negative pairing
  Rational witness_pairing;
};

NefResult is_nef(const SurfaceModel& m, const DivClass& d);

struct ZariskiResult {
  DivClass positive;
  std::vector<std::pair<std::string, Rational>> negative;  // in order of entry
  DivClass negative_class(const SurfaceModel& m) const;
};

ZariskiResult zariski_decompose(const SurfaceModel& m, const DivClass& d);

struct QuadraticPiece {
  Rational t_lo, t_hi, q0, q1, q2;
  std::vector<std::string> support;
  Rational value(const Rational& t) const { return q0 + q1 * t + q2 * t * t; }
};

struct VolumeProfile {
  std::vector<QuadraticPiece> pieces;
  Rational tau;
  Rational value(const Rational& t) const;
  double value(double t) const;
};

// vol(origin - t*direction) for t in [0, tau]
VolumeProfile volume_profile(const SurfaceModel& m, const DivClass& origin, const DivClass& direction);

Rational integrate_profile(const VolumeProfile& p);

json profile_to_json(const VolumeProfile& p);

}  // namespace kwall
