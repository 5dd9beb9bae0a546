#pragma once

#include "kwall/catalog.hpp"

namespace kwall::testing {

inline SurfacePtr sigma5() { return Catalog::open_default()->surface("Sigma5"); }

inline DivClass cls(const SurfacePtr& m, std::initializer_list<long> v) {
  Vec c;
  for (long x : v) c.emplace_back(x);
  return DivClass(m->lattice(), c);
}

}  // namespace kwall::testing
