#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kwall/stability.hpp"

namespace kwall {

inline constexpr const char* kDerivedByOracle = "derived-by-oracle";

struct Fixture {
  std::string id, family, description;
  LogPair pair;
  ValuationSpec valuation;
  // nullopt means "derived": no printed value to compare against
  std::optional<AffineRatFn> expected_A, expected_S, expected_beta;
  std::optional<Rational> expected_wall;
  std::optional<std::vector<QuadraticPiece>> expected_profile;
  std::map<std::string, std::string> provenance;
};

struct WallEntry {
  Rational wall;
  bool divisorial = false;
  std::string description;
};

struct WallTable {
  std::vector<WallEntry> walls;  // ascending
};

struct PolystabilitySet {
  std::string id, description;
  LogPair pair;
  Rational wall;
  std::vector<ValuationSpec> valuations;
};

class Catalog {
 public:
  // KWALL_CATALOG if set, otherwise the catalog shipped with the sources
  static std::string default_path();
  static std::shared_ptr<const Catalog> open(const std::string& dir);
  static std::shared_ptr<const Catalog> open_default();

  const std::string& path() const { return dir_; }
  std::vector<std::string> surface_names() const;
  SurfacePtr surface(const std::string& name) const;

  std::vector<std::string> enumerate_fixtures(const std::optional<std::string>& family = std::nullopt) const;
  Fixture load_fixture(const std::string& id) const;
  WallTable expected_wall_list() const;
  std::vector<std::string> polystability_ids() const;
  PolystabilitySet load_polystability(const std::string& id) const;

  // shared with ad-hoc pair files: {"surface", "boundary", "valuation"}
  SurfacePtr resolve_surface(const json& j, const std::string& where) const;
  LogPair pair_from_json(SurfacePtr s, const json& boundary, const std::string& where) const;
  ValuationSpec valuation_from_json(const LogPair& p, const json& v, const std::string& where) const;

 private:
  std::string dir_;
  std::map<std::string, SurfacePtr> surfaces_;
  std::map<std::string, json> fixtures_;
  std::map<std::string, json> poly_;
  json walls_;
};

Fixture load_fixture(const std::string& id);
WallTable expected_wall_list();
std::vector<std::string> enumerate_fixtures(const std::optional<std::string>& family = std::nullopt);

std::string family_of(const std::string& id);

}  // namespace kwall
