#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kwall/json_util.hpp"
#include "kwall/lattice.hpp"

namespace kwall {

struct MoriGen {
  std::string name;
  DivClass cls;
};

// A resolution Y of the target X together with the contraction data of Y -> X.
// The Mori generator list is declared, not computed; nef tests trust it to be complete.
class SurfaceModel {
 public:
  SurfaceModel(std::string name, LatticePtr lattice, DivClass canonical, std::vector<MoriGen> mori,
               std::vector<std::string> contracted, std::map<std::string, Rational> k_discrepancies,
               std::string description = {});

  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  const LatticePtr& lattice() const { return lattice_; }
  const DivClass& canonical() const { return canonical_; }
  const std::vector<MoriGen>& mori() const { return mori_; }
  const std::vector<std::string>& contracted() const { return contracted_; }
  const std::map<std::string, Rational>& k_discrepancies() const { return k_disc_; }

  const MoriGen* find(const std::string& name) const;
  const DivClass& cls(const std::string& name) const;  // throws ConfigurationError
  bool is_contracted(const std::string& name) const;
  Rational k_discrepancy(const std::string& name) const;

  DivClass pullback_canonical() const;  // pi^*K_X
  DivClass anticanonical() const;       // pi^*(-K_X)
  Rational degree() const;

 private:
  std::string name_, description_;
  LatticePtr lattice_;
  DivClass canonical_;
  std::vector<MoriGen> mori_;
  std::vector<std::string> contracted_;
  std::map<std::string, Rational> k_disc_;
};

using SurfacePtr = std::shared_ptr<const SurfaceModel>;

struct SurfaceReport {
  LatticeReport lattice;
  std::vector<std::string> problems;
  bool ok() const { return lattice.ok() && problems.empty(); }
};

SurfaceReport validate_surface(const SurfaceModel& m);

Rational anticanonical_degree(const SurfaceModel& m);

// coefficients c_j with d + sum c_j C_j orthogonal to every contracted C_j
std::vector<Rational> pullback_coefficients(const SurfaceModel& m, const DivClass& d);
DivClass pullback_weil(const SurfaceModel& m, const DivClass& d);

struct ExtraCurve {
  std::string name;
  DivClass base_class;
  Rational ord;
};

// Weighted (a,b) blow-up of a smooth point of the resolution.
struct BlowupCenter {
  long a = 1, b = 1;
  std::string e_name = "E";
  std::map<std::string, Rational> ord;  // ord_E of curves through the point; names that are not Mori generators are ignored here
  std::vector<ExtraCurve> extra;        // curves that only become extremal after the blow-up
};

class BlowupExtension {
 public:
  const SurfacePtr& base() const { return base_; }
  const SurfacePtr& model() const { return model_; }
  const DivClass& e_class() const { return e_; }
  const Rational& a_over_base() const { return a_; }
  const std::vector<MoriGen>& extra_mori() const { return extra_; }
  long weight_a() const { return wa_; }
  long weight_b() const { return wb_; }

  DivClass pullback(const DivClass& d) const;
  DivClass proper_transform(const DivClass& d, const Rational& ord) const;

 private:
  friend BlowupExtension build_blowup_extension(SurfacePtr base, const BlowupCenter& center);
  BlowupExtension(SurfacePtr base, SurfacePtr model, DivClass e, Rational a, std::vector<MoriGen> extra, long wa,
                  long wb)
      : base_(std::move(base)), model_(std::move(model)), e_(std::move(e)), a_(std::move(a)),
        extra_(std::move(extra)), wa_(wa), wb_(wb) {}
  SurfacePtr base_, model_;
  DivClass e_;
  Rational a_;
  std::vector<MoriGen> extra_;
  long wa_, wb_;
};

BlowupExtension build_blowup_extension(SurfacePtr base, const BlowupCenter& center);

// surface document: {"basis","gram","canonical","mori","contracted","k_discrepancies"}
SurfacePtr surface_from_json(const json& j, const std::string& name, const std::string& where = "");
json surface_to_json(const SurfaceModel& m);

}  // namespace kwall
