#pragma once

#include <optional>

#include "jbstar/algebra.hpp"
#include "jbstar/octonion.hpp"
#include "jbstar/rng.hpp"
#include "jbstar/spectral.hpp"

namespace jbstar {

/// Glennie's s-identity evaluator (any model):
///   G(x,y,z) = 2{x,z,x} o {y,{z,y^2,z},x} - 2{y,z,y} o {y,{z,y^2,z},x}
///            - {x,{z,{x,{y,z,y},y},z},x} + {y,{z,{x,{x,z,x},y},z},y}.
/// Vanishes identically on special Jordan algebras; fails on the cubic
/// octonionic model, which certifies its exceptionality.
Element glennie_eval(const Element& x, const Element& y, const Element& z);

struct GlennieSearchResult {
  bool found;
  Element x, y, z;
  double norm;      // self-adjoint spectral norm of G(x,y,z)
  int trials_used;
};

/// Random search for a Glennie violation: self-adjoint triples with
/// coordinates uniform in [-1,1]; returns the first triple whose violation
/// norm exceeds the threshold, or the best one found with found = false.
GlennieSearchResult glennie_violation_search(const Algebra& alg, Rng& rng, int trials,
                                             double threshold,
                                             const Tolerances& tol = {});

/// Uniform [-1,1] coordinates, self-adjoint (the search distribution).
Element random_box_self_adjoint(const Algebra& alg, Rng& rng);

}  // namespace jbstar
