#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "doctest.h"
#include "kwall/catalog.hpp"
#include "kwall/errors.hpp"

using namespace kwall;
namespace fs = std::filesystem;

namespace {

// copy of the shipped catalog that a test may edit
struct ScratchCatalog {
  fs::path dir;
  explicit ScratchCatalog(const std::string& tag) {
    dir = fs::temp_directory_path() / ("kwall-catalog-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::copy(Catalog::default_path(), dir, fs::copy_options::recursive);
  }
  ~ScratchCatalog() { fs::remove_all(dir); }
  json read(const std::string& rel) const { return read_json_file((dir / rel).string()); }
  void write(const std::string& rel, const json& j) const { std::ofstream(dir / rel) << j.dump(1); }
};

json& fixture_entry(json& doc, const std::string& id) {
  for (auto& f : doc["fixtures"])
    if (f["id"] == id) return f;
  throw std::runtime_error("no fixture " + id);
}

}  // namespace

TEST_CASE("fixture counts") {
  auto cat = Catalog::open_default();
  CHECK(cat->enumerate_fixtures().size() >= 30);
  CHECK(cat->enumerate_fixtures("X12").size() == 9);
  CHECK(cat->enumerate_fixtures("Xt").size() == 7);
  CHECK(cat->enumerate_fixtures("ADE").size() == 8);
  CHECK(cat->enumerate_fixtures("nope").empty());
  CHECK(enumerate_fixtures().size() == cat->enumerate_fixtures().size());
}

TEST_CASE("spec fixtures carry the published walls") {
  CHECK(load_fixture("Sigma5/D_1_17/L1").expected_wall == Rational(1, 17));
  CHECK(load_fixture("Xt/D_11_52/Cprime").expected_wall == Rational(11, 52));
  CHECK(load_fixture("Xq/table5/xz4+y3z2").expected_wall == Rational(19, 68));
  CHECK(family_of("Xq/table5/xz4+y3z2") == "Xq");
}

TEST_CASE("unknown fixture lists the available ids") {
  try {
    load_fixture("Sigma5/nope");
    FAIL("expected an error");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("Sigma5/D_1_17/L1") != std::string::npos);
  }
}

TEST_CASE("wall table") {
  WallTable t = expected_wall_list();
  REQUIRE(t.walls.size() == 24);
  CHECK(t.walls.front().wall == Rational(1, 17));
  CHECK(t.walls.back().wall == Rational(11, 28));
  for (size_t i = 1; i < t.walls.size(); ++i) CHECK(t.walls[i - 1].wall < t.walls[i].wall);
  std::set<Rational> div;
  for (const auto& w : t.walls)
    if (w.divisorial) div.insert(w.wall);
  CHECK(div == std::set<Rational>{Rational(1, 17), Rational(11, 52), Rational(1, 4)});
}

TEST_CASE("fixture walls cover exactly the wall table") {
  auto cat = Catalog::open_default();
  std::set<Rational> computed, table;
  for (const auto& id : cat->enumerate_fixtures()) {
    Fixture f = cat->load_fixture(id);
    WallSolution w = solve_wall(beta(f.pair, f.valuation), f.pair.c_lo, f.pair.c_hi);
    if (w.kind == WallSolution::root) computed.insert(w.value);
    CHECK(f.provenance.count("wall"));
    CHECK_FALSE(f.provenance.empty());
  }
  for (const auto& w : expected_wall_list().walls) table.insert(w.wall);
  CHECK(computed == table);

  std::set<Rational> xq;
  for (const auto& id : cat->enumerate_fixtures("Xq")) {
    Fixture f = cat->load_fixture(id);
    xq.insert(solve_wall(beta(f.pair, f.valuation)).value);
  }
  CHECK(xq.size() == 8);
  CHECK(xq.count(Rational(1, 4)));
}

TEST_CASE("boundaries are twice the anticanonical class") {
  auto cat = Catalog::open_default();
  for (const auto& id : cat->enumerate_fixtures()) {
    CAPTURE(id);
    CHECK_NOTHROW(validate_pair(cat->load_fixture(id).pair));
  }
}

TEST_CASE("declared invariants are checked against derived ones") {
  ScratchCatalog sc("ax");
  json doc = sc.read("fixtures/Sigma5.json");
  fixture_entry(doc, "Sigma5/D_1_17/L1")["valuation"]["a_x"] = "2";
  fixture_entry(doc, "Sigma5/D_1_4/E")["valuation"]["ord_b"] = "4";
  sc.write("fixtures/Sigma5.json", doc);
  auto cat = Catalog::open(sc.dir.string());
  CHECK_THROWS_AS(cat->load_fixture("Sigma5/D_1_17/L1"), InputError);
  CHECK_THROWS_AS(cat->load_fixture("Sigma5/D_1_4/E"), InputError);
  CHECK_NOTHROW(cat->load_fixture("Xq/D_1_4/E"));
}

TEST_CASE("a boundary that is not -2K is rejected") {
  ScratchCatalog sc("bnd");
  json doc = sc.read("fixtures/Sigma5.json");
  auto& comps = fixture_entry(doc, "Sigma5/D_1_17/L1")["boundary"]["components"];
  comps[0]["mult"] = "1";
  sc.write("fixtures/Sigma5.json", doc);
  CHECK_THROWS_AS(Catalog::open(sc.dir.string())->load_fixture("Sigma5/D_1_17/L1"), Error);
}

TEST_CASE("malformed catalog files are input errors") {
  ScratchCatalog sc("bad");
  std::ofstream(sc.dir / "walls.json") << "{ not json";
  CHECK_THROWS_AS(Catalog::open(sc.dir.string()), InputError);
  CHECK_THROWS_AS(Catalog::open((sc.dir / "missing").string()), InputError);
}
