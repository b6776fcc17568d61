#include "jbstar/report.hpp"

namespace jbstar {

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = schema;
  j["suite"] = suite;
  j["algebra"] = algebra;
  j["seed"] = seed;
  j["samples"] = samples;
  j["tolerances"] = {{"eq_tol", tolerances.eq_tol},
                     {"residual_tol", tolerances.residual_tol},
                     {"spectral_tol", tolerances.spectral_tol}};
  j["pass"] = all_pass();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["anchor"] = c.anchor;
    cj["pass"] = c.pass;
    if (c.residual) cj["residual"] = *c.residual;
    if (!c.payload.is_null()) cj["payload"] = c.payload;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  return j;
}

nlohmann::json element_to_json(const Element& e) {
  nlohmann::json coords = nlohmann::json::array();
  for (int i = 0; i < e.coords().size(); ++i)
    coords.push_back({e.coords()[i].real(), e.coords()[i].imag()});
  return {{"algebra", e.algebra().to_string()}, {"coords", coords}};
}

Element element_from_json(const Algebra& alg, const nlohmann::json& j) {
  const nlohmann::json& coords = j.is_object() ? j.at("coords") : j;
  if (!coords.is_array() || static_cast<int>(coords.size()) != alg.dim())
    throw ParseError("coordinate array of length " + std::to_string(alg.dim()) +
                     " expected for " + alg.to_string());
  Vector v(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    const auto& c = coords[i];
    if (c.is_number())
      v[i] = c.get<double>();
    else if (c.is_array() && c.size() == 2)
      v[i] = Complex(c[0].get<double>(), c[1].get<double>());
    else
      throw ParseError("coordinate entries must be numbers or [re, im] pairs");
  }
  return Element(alg, std::move(v));
}

}  // namespace jbstar
