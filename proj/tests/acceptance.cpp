// One line per acceptance criterion; nonzero exit if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kwall/catalog.hpp"
#include "kwall/errors.hpp"
#include "kwall/stability.hpp"
#include "oracle.hpp"

using namespace kwall;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;
  void fail(std::string d) {
    pass = false;
    details.push_back(std::move(d));
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

Outcome c1_walls(const std::string& exe) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto cat = Catalog::open_default();
  std::set<Rational> computed, table, div;
  for (const auto& id : cat->enumerate_fixtures()) {
    Fixture f = cat->load_fixture(id);
    WallSolution w = solve_wall(beta(f.pair, f.valuation), f.pair.c_lo, f.pair.c_hi);
    if (w.kind == WallSolution::root) computed.insert(w.value);
  }
  for (const auto& w : cat->expected_wall_list().walls) {
    table.insert(w.wall);
    if (w.divisorial && computed.count(w.wall)) div.insert(w.wall);
  }
  for (const auto& w : table)
    if (!computed.count(w)) o.fail("missing wall " + w.str());
  for (const auto& w : computed)
    if (!table.count(w)) o.fail("unexpected wall " + w.str());
  if (table.size() != 24) o.fail("wall table has " + std::to_string(table.size()) + " entries");
  if (div != std::set<Rational>{Rational(1, 17), Rational(11, 52), Rational(1, 4)}) o.fail("divisorial set differs");

  std::string cli = "not run";
  if (!exe.empty()) {
    int status = 0;
    std::string out = run_capture("'" + exe + "' --json walls --diff", status);
    try {
      json j = json::parse(out);
      const json& d = j.at("diff");
      if (status != 0) o.fail("walls --diff exited " + std::to_string(status));
      if (d.at("matched") != 24 || !d.at("missing").empty() || !d.at("unexpected").empty())
        o.fail("walls --diff did not match all 24 walls");
      if (d.at("divisorial_matched") != 3) o.fail("walls --diff flagged a different divisorial count");
      cli = "walls --diff exit " + std::to_string(status);
    } catch (const std::exception& e) {
      o.fail(std::string("could not parse walls --diff output: ") + e.what());
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 10) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << computed.size() << "/" << table.size() << " walls reproduced, " << div.size() << " divisorial, " << cli << ", "
    << secs << " s";
  o.summary = s.str();
  return o;
}

Outcome c2_s_invariants() {
  Outcome o;
  const std::vector<std::pair<std::string, Rational>> want = {
      {"Sigma5/D_1_17/L1", Rational(13, 15)}, {"Xt/D_11_52/Cprime", Rational(19, 30)},
      {"Xt/D_11_52/E", Rational(13, 15)},     {"X12/D_4_23/F3", Rational(23, 15)},
      {"Xprime/D_13_41/E", Rational(32, 15)}, {"Xprime/D_13_41/l", Rational(41, 30)},
      {"Xq/D_1_4/E", Rational(3, 2)},         {"Index3/exclusion/l", Rational(11, 9)},
  };
  size_t ok = 0;
  for (const auto& [id, s] : want) {
    Fixture f = load_fixture(id);
    AffineRatFn got = s_invariant(f.pair, f.valuation);
    if (got == AffineRatFn{s, Rational(-2) * s}) ++ok;
    else o.fail(id + ": S = " + got.str() + ", expected " + s.str() + " (1-2c)");
  }
  o.summary = std::to_string(ok) + "/" + std::to_string(want.size()) + " S prefactors exact";
  return o;
}

// " (printed = k x engine, same root)" when the two differ by a constant factor
std::string proportion(const AffineRatFn& engine, const AffineRatFn& printed) {
  if (engine.c0.is_zero() || engine.c1.is_zero()) return "";
  Rational k = printed.c0 / engine.c0;
  if (printed.c1 != k * engine.c1) return " (not proportional: different root)";
  return " (printed = " + k.str() + " x engine, same root)";
}

Outcome c3_beta_and_walls() {
  Outcome o;
  size_t beta_rows = 0, beta_ok = 0, wall_rows = 0, wall_ok = 0;
  for (const auto& id : enumerate_fixtures()) {
    Fixture f = load_fixture(id);
    AffineRatFn b = beta(f.pair, f.valuation);
    auto prov = f.provenance.find("beta");
    bool printed = f.expected_beta && prov != f.provenance.end() && prov->second != kDerivedByOracle;
    if (printed) {
      ++beta_rows;
      if (b == *f.expected_beta) ++beta_ok;
      else o.fail(id + ": beta = " + b.str() + ", printed " + f.expected_beta->str() + proportion(b, *f.expected_beta));
    }
    if (f.expected_wall) {
      ++wall_rows;
      WallSolution w = solve_wall(b, f.pair.c_lo, f.pair.c_hi);
      if (w.kind == WallSolution::root && w.value == *f.expected_wall) ++wall_ok;
      else
        o.fail(id + ": wall = " + (w.kind == WallSolution::root ? w.value.str() : std::string("none")) +
               ", printed " + f.expected_wall->str());
    }
  }
  o.summary = std::to_string(beta_ok) + "/" + std::to_string(beta_rows) + " printed beta formulas, " +
              std::to_string(wall_ok) + "/" + std::to_string(wall_rows) + " table walls";
  return o;
}

Outcome c4_profiles() {
  Outcome o;
  size_t rays = 0, ok = 0;
  for (const auto& id : enumerate_fixtures()) {
    Fixture f = load_fixture(id);
    if (!f.expected_profile) continue;
    ++rays;
    VolumeProfile p = s_data(f.pair, f.valuation).profile;
    const auto& want = *f.expected_profile;
    bool same = p.pieces.size() == want.size();
    for (size_t i = 0; same && i < want.size(); ++i) {
      const auto &a = p.pieces[i], &b = want[i];
      same = a.t_lo == b.t_lo && a.t_hi == b.t_hi && a.q0 == b.q0 && a.q1 == b.q1 && a.q2 == b.q2;
    }
    if (same) {
      ++ok;
      continue;
    }
    std::ostringstream d;
    d << id << ": engine";
    for (const auto& q : p.pieces)
      d << " [" << q.t_lo << "," << q.t_hi << "] " << q.q0 << " + " << q.q1 << " t + " << q.q2 << " t^2;";
    d << " printed";
    for (const auto& q : want) {
      d << " [" << q.t_lo << "," << q.t_hi << "] " << q.q0 << " + " << q.q1 << " t + " << q.q2 << " t^2;";
    }
    VolumeProfile printed{want, want.back().t_hi};
    for (size_t i = 0; i + 1 < want.size(); ++i)
      if (want[i].value(want[i].t_hi) != want[i + 1].value(want[i].t_hi))
        d << " (printed profile is discontinuous at " << want[i].t_hi << ")";
    if (!want.back().value(want.back().t_hi).is_zero())
      d << " (printed vol(" << want.back().t_hi << ") = " << want.back().value(want.back().t_hi) << ")";
    d << " integrals " << integrate_profile(p) << " vs " << integrate_profile(printed);
    o.fail(d.str());
  }
  o.summary = std::to_string(ok) + "/" + std::to_string(rays) + " displayed profiles match piece by piece";
  return o;
}

Outcome c5_oracle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto cat = Catalog::open_default();
  std::mt19937_64 rng(20240917);
  size_t total = 0, agree = 0, surfaces = 0;
  for (const auto& name : cat->surface_names()) {
    SurfacePtr s = cat->surface(name);
    if (s->lattice()->rank() > 6) continue;
    ++surfaces;
    oracle::SubsetOracle orc(*s);
    for (int i = 0; i < 100; ++i) {
      DivClass d = oracle::random_pseudo_effective(*s, rng);
      ++total;
      auto ref = orc.decompose(d);
      try {
        ZariskiResult z = zariski_decompose(*s, d);
        auto neg = z.negative;
        std::sort(neg.begin(), neg.end());
        if (ref.size() == 1 && ref[0].positive == z.positive && ref[0].negative == neg) ++agree;
        else o.fail(name + " " + format_vec(d.coords()) + ": oracle found " + std::to_string(ref.size()) +
                    " decompositions, engine differs");
      } catch (const Error& e) {
        o.fail(name + " " + format_vec(d.coords()) + ": " + e.what());
      }
    }
  }
  double secs = seconds_since(t0);
  if (total < 1000) o.fail("only " + std::to_string(total) + " classes");
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << agree << "/" << total << " classes agree over " << surfaces << " models, " << secs << " s";
  o.summary = s.str();
  return o;
}

Outcome c6_profile_properties() {
  Outcome o;
  auto cat = Catalog::open_default();
  size_t rays = 0, ok = 0;
  auto check = [&](const std::string& label, const LogPair& p, const ValuationSpec& v) {
    ++rays;
    DivClass origin = v.origin();
    SData sd = s_data(p, v);
    auto bad = oracle::profile_violations(v.ambient(), origin, v.e_class, sd.profile, p.surface->degree());
    if (p.surface->name() != "P2" && p.surface->degree() != Rational(5)) bad.push_back("quintic degree is not 5");
    if (bad.empty()) ++ok;
    for (const auto& b : bad) o.fail(label + ": " + b);
  };
  for (const auto& id : cat->enumerate_fixtures()) {
    Fixture f = cat->load_fixture(id);
    check(id, f.pair, f.valuation);
  }
  for (const auto& id : cat->polystability_ids()) {
    PolystabilitySet ps = cat->load_polystability(id);
    for (const auto& v : ps.valuations) check(id + "/" + v.name, ps.pair, v);
  }
  o.summary = std::to_string(ok) + "/" + std::to_string(rays) + " catalog rays continuous, monotone, vol(tau)=0, quadrature within 1e-9";
  return o;
}

Outcome c7_bounds() {
  Outcome o;
  Rational smooth = quotient_order_bound(pair_degree(Rational(1, 100)));
  Rational a1 = quotient_order_bound(pair_degree(Rational(1, 17) + Rational(1, 1000)));
  if (!(smooth < Rational(2))) o.fail("bound at c = 1/100 is " + smooth.str());
  if (!(a1 < Rational(3))) o.fail("bound at c = 1/17 + 1/1000 is " + a1.str());
  size_t feasible = 0;
  for (long k = 1; k < 500; ++k)
    for (long d = 1; d <= 9; ++d)
      for (long n = 1; n <= 9; ++n)
        if (index_feasibility(d, n, Rational(k, 1000), Rational(4))) {
          ++feasible;
          if (Rational(d * n * n) > Rational(9, 5))
            o.fail("ord 4 feasible with dn^2 = " + std::to_string(d * n * n) + " at c = " + Rational(k, 1000).str());
        }
  o.summary = "bound(1/100) = " + smooth.str() + " < 2, bound(1/17+1/1000) = " + a1.str() + " < 3, ord >= 4 leaves " +
              std::to_string(feasible) + " feasible (d,n,c) all with dn^2 <= 9/5";
  return o;
}

Outcome c8_polystability() {
  Outcome o;
  auto cat = Catalog::open_default();
  size_t ok = 0;
  std::vector<std::string> names;
  for (const auto& id : cat->polystability_ids()) {
    PolystabilitySet ps = cat->load_polystability(id);
    bool good = true;
    PolystabilityResult at = polystability_check(ps.pair, ps.valuations, ps.wall);
    if (at.verdict != Verdict::polystable) {
      good = false;
      o.fail(id + ": " + to_string(at.verdict) + " at the wall " + ps.wall.str());
    }
    for (const Rational& c : {ps.wall - Rational(1, 1000), ps.wall + Rational(1, 1000)}) {
      PolystabilityResult r = polystability_check(ps.pair, ps.valuations, c);
      if (r.verdict != Verdict::unstable || r.witnesses.empty()) {
        good = false;
        o.fail(id + ": " + to_string(r.verdict) + " at c = " + c.str());
      } else {
        names.push_back(id + "@" + c.str() + ":" + r.witnesses.front().name);
      }
    }
    if (good) ++ok;
  }
  if (cat->polystability_ids().size() != 4) o.fail("expected 4 polystability sets");
  o.summary = std::to_string(ok) + "/" + std::to_string(cat->polystability_ids().size()) +
              " sets POLYSTABLE at the wall and UNSTABLE with a witness at wall +- 1/1000";
  for (const auto& n : names) o.details.push_back(n);
  return o;
}

Outcome c9_p2() {
  Outcome o;
  Fixture f = load_fixture("P2/sanity/line");
  AffineRatFn b = beta(f.pair, f.valuation);
  WallSolution w = solve_wall(b);
  if (!b.is_zero()) o.fail("beta = " + b.str());
  if (w.kind != WallSolution::identically_zero) o.fail("solve_wall does not report identically zero");
  o.summary = "beta(line) = " + b.str() + ", identically zero";
  return o;
}

Outcome c10_vgit() {
  Outcome o;
  Rational start = vgit_slope(Rational(1, 4));
  if (start != Rational(5, 2)) o.fail("vgit_slope(1/4) = " + start.str());
  Rational prev = start;
  for (long k = 251; k < 500; ++k) {
    Rational v = vgit_slope(Rational(k, 1000));
    if (!(v < prev)) o.fail("not decreasing at c = " + Rational(k, 1000).str());
    prev = v;
  }
  bool rejects = false;
  try {
    vgit_slope(Rational(1, 2));
  } catch (const DomainError&) {
    rejects = true;
  }
  if (!rejects) o.fail("c = 1/2 accepted");
  o.summary = "vgit_slope(1/4) = " + start.str() + ", strictly decreasing on 250 sample points of [1/4, 1/2)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string exe = argc > 1 ? argv[1] : "";
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 wall list reproduction", [&] { return c1_walls(exe); }},
      {"C2 S-invariants", c2_s_invariants},
      {"C3 printed beta formulas and table walls", c3_beta_and_walls},
      {"C4 displayed volume profiles", c4_profiles},
      {"C5 Zariski oracle equivalence", c5_oracle},
      {"C6 profile properties", c6_profile_properties},
      {"C7 singularity bounds", c7_bounds},
      {"C8 polystability fixtures", c8_polystability},
      {"C9 P2 sanity", c9_p2},
      {"C10 vgit slope", c10_vgit},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.summary << "\n";
    for (const auto& d : o.details) std::cout << "       " << d << "\n";
    failed += !o.pass;
  }
  std::cout << (10 - failed) << "/10 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
