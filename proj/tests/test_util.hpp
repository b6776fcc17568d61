#pragma once

#include <doctest.h>

#include "jbstar/algebra.hpp"
#include "jbstar/rng.hpp"
#include "jbstar/sampling.hpp"
#include "jbstar/spectral.hpp"

namespace jt {

using namespace jbstar;

inline Element mat2(const Algebra& alg, std::initializer_list<Complex> entries) {
  Vector v(alg.dim());
  int i = 0;
  for (auto e : entries) v[i++] = e;
  return Element(alg, v);
}

inline double dist(const Element& a, const Element& b) { return (a - b).coord_norm(); }

inline std::vector<Algebra> standard_models() {
  return {Algebra::matrix(2), Algebra::matrix(3), Algebra::spin(3), Algebra::spin(5),
          Algebra::h3o(),
          Algebra::direct_sum({Algebra::matrix(2), Algebra::spin(4)})};
}

}  // namespace jt
