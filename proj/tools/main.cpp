// jbstar: batch verifier for finite-dimensional Jordan-*-algebra models.
//
// Subcommands
//   suite               run a named invariant battery, emit a JSON report
//   two-proj            canonical form of a projection pair
//   spin-counterexample the hemisphere lattice map between spin factors
//   glennie             s-identity residuals / violation search
//   tingley             sphere-isometry extension round trip
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "jbstar/exceptional.hpp"
#include "jbstar/report.hpp"
#include "jbstar/sampling.hpp"
#include "jbstar/spin.hpp"
#include "jbstar/suites.hpp"
#include "jbstar/tingley.hpp"
#include "jbstar/two_projections.hpp"

namespace {

using namespace jbstar;

void emit(const nlohmann::json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot open output path '" + out_path + "'");
    f << text;
  }
}

nlohmann::json json_from_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) throw ParseError("cannot open '" + arg.substr(1) + "'");
    return nlohmann::json::parse(f);
  }
  return nlohmann::json::parse(arg);
}

int run_suite_cmd(const SuiteOptions& opts, const std::string& out_path) {
  VerificationReport report = run_suite(opts);
  emit(report.to_json(), out_path);
  std::cerr << "suite " << report.suite << " on " << report.algebra << ": "
            << (report.all_pass() ? "pass" : "FAIL") << " ("
            << report.duration_seconds << " s)\n";
  return report.all_pass() ? 0 : 1;
}

int run_two_proj(const std::string& algebra, bool random, std::uint64_t seed,
                 const std::string& p_json, const std::string& q_json,
                 const Tolerances& tol, const std::string& out_path) {
  Algebra alg = Algebra::parse(algebra);
  Rng rng(seed);
  Element p = Element::zero(alg), q = Element::zero(alg);
  if (random) {
    p = random_projection(alg, rng, tol, {false, false});
    q = random_projection(alg, rng, tol, {false, false});
  } else {
    if (p_json.empty() || q_json.empty())
      throw ParseError("either --random or both --p and --q are required");
    p = element_from_json(alg, json_from_arg(p_json));
    q = element_from_json(alg, json_from_arg(q_json));
  }

  auto rep = build_representation(p, q, tol, rng);
  int expected = generated_subalgebra_expected_dim(p, q, true, tol);
  int actual = static_cast<int>(rep.iso.sample_span.size());

  nlohmann::json j;
  j["schema"] = 1;
  j["algebra"] = alg.to_string();
  j["seed"] = seed;
  j["p"] = element_to_json(p);
  j["q"] = element_to_json(q);
  j["interior_spectrum"] = rep.invariants.interior;
  j["interior_multiplicity"] = rep.invariants.interior_multiplicity;
  j["corner_slots"] = rep.corner_slots;
  j["s2_blocks"] = rep.s2_blocks;
  j["generated_dimension"] = actual;
  j["expected_dimension"] = expected;
  j["model_p"] = element_to_json(rep.model_p);
  j["model_q"] = element_to_json(rep.model_q);
  j["residuals"] = {{"multiplicativity", rep.residuals.multiplicativity},
                    {"involution", rep.residuals.involution},
                    {"isometry", rep.residuals.isometry},
                    {"unital", rep.residuals.unital}};
  bool pass = rep.residuals.verified(tol) && expected == actual;
  j["pass"] = pass;
  emit(j, out_path);
  return pass ? 0 : 1;
}

int run_spin_counterexample(std::uint64_t seed, int samples, const Tolerances& tol,
                            const std::string& out_path) {
  SpinProjectionMap theta = counterexample_theta(seed);
  Rng rng(seed);

  bool antipodal_ok = true;
  bool complement_rule_exact = true;
  int violation_trial = -1;
  double violation_overlap = 0;

  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd b(2);
    b << rng.gaussian(), rng.gaussian();
    if (b.norm() < 1e-9) continue;
    b /= b.norm();
    SpinProjection p = upsilon_inv(b, tol);
    SpinProjection q = upsilon_inv(Eigen::VectorXd(-b), tol);
    SpinProjection tp = theta.map(p), tq = theta.map(q);
    // The complement rule is exact by construction; the distance only sees
    // the roundoff of normalizing the stored unit vector.
    if (std::abs(min_proj_distance(tp, tq) - 1.0) > 1e-12) antipodal_ok = false;
    if ((tp.b + tq.b).norm() != 0.0) complement_rule_exact = false;

    if (violation_trial < 0) {
      Eigen::VectorXd c(2);
      c << -b[1], b[0];
      double overlap = tp.b.dot(theta.map(upsilon_inv(c, tol)).b);
      if (std::abs(overlap) > 0.01) {
        violation_trial = i;
        violation_overlap = overlap;
      }
    }
  }

  nlohmann::json j;
  j["schema"] = 1;
  j["seed"] = seed;
  j["samples"] = samples;
  j["source"] = "spin:3";
  j["target"] = "spin:4";
  j["antipodal_pairs_preserved"] = antipodal_ok;
  j["complement_rule_exact"] = complement_rule_exact;
  j["sqrt2_violation_found"] = violation_trial >= 0;
  if (violation_trial >= 0) {
    j["sqrt2_violation_trial"] = violation_trial;
    j["sqrt2_violation_overlap"] = violation_overlap;
  }
  bool pass = antipodal_ok && complement_rule_exact && violation_trial >= 0;
  j["pass"] = pass;
  emit(j, out_path);
  return pass ? 0 : 1;
}

int run_glennie(const std::string& algebra, int trials, std::uint64_t seed,
                double threshold, const Tolerances& tol, const std::string& out_path) {
  Algebra alg = Algebra::parse(algebra);
  Rng rng(seed);
  auto res = glennie_violation_search(alg, rng, trials, threshold, tol);

  bool exceptional = alg.kind() == Kind::OctonionHermitian3;
  if (alg.is_sum())
    for (const auto& b : alg.summands())
      if (b.kind() == Kind::OctonionHermitian3) exceptional = true;

  nlohmann::json j;
  j["schema"] = 1;
  j["algebra"] = alg.to_string();
  j["seed"] = seed;
  j["trials"] = trials;
  j["threshold"] = threshold;
  j["exceptional_model"] = exceptional;
  j["violation_found"] = res.found;
  j["max_violation_norm"] = res.norm;
  j["trials_used"] = res.trials_used;
  if (res.found) {
    j["witness"] = {{"x", element_to_json(res.x)},
                    {"y", element_to_json(res.y)},
                    {"z", element_to_json(res.z)}};
  }
  // Exceptional models must violate; special models must stay at the
  // identity's numerical floor.
  bool pass = exceptional ? res.found : (!res.found && res.norm <= 1e-10);
  j["pass"] = pass;
  emit(j, out_path);
  return pass ? 0 : 1;
}

int run_tingley(const std::string& algebra, std::uint64_t seed,
                const std::string& perturb, const Tolerances& tol,
                const std::string& out_path) {
  Algebra alg = Algebra::parse(algebra);
  Rng rng(seed);
  JordanMap phi0 = random_jordan_iso(alg, rng);
  SphereMap delta = synthesize_sphere_isometry(phi0, tol, rng);

  nlohmann::json j;
  j["schema"] = 1;
  j["algebra"] = alg.to_string();
  j["seed"] = seed;
  j["perturb"] = perturb;

  bool pass = false;
  if (perturb.empty() || perturb == "none") {
    JordanMap phi = extend_isometry(delta, tol, rng, 200);
    double worst = 0;
    for (int k = 0; k < 200; ++k) {
      Element x = random_positive_sphere(alg, rng, tol);
      worst = std::max(worst, op_distance(phi.apply(x), delta(x), tol));
    }
    double generator_gap = (phi.matrix - phi0.matrix).norm();
    j["recovered"] = true;
    j["sup_agreement_error"] = worst;
    j["generator_matrix_gap"] = generator_gap;
    pass = worst <= tol.residual_tol && generator_gap <= 1e-8;
  } else {
    int k = (perturb == "interior-cube") ? 3 : 2;
    SphereMap bent = perturb_interior_spectrum(delta, k, tol);
    try {
      extend_isometry(bent, tol, rng, 100);
      j["rejected"] = false;
      pass = false;
    } catch (const VerificationFailure& e) {
      j["rejected"] = true;
      j["rejection_reason"] = e.what();
      j["rejection_witness"] = e.worst_residual;
      pass = true;
    }
  }
  j["pass"] = pass;
  emit(j, out_path);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional Jordan-*-algebra verifier"};
  app.require_subcommand(1);

  std::string algebra = "mat:3";
  std::string out_path;
  std::uint64_t seed = 0;
  int samples = 50;
  Tolerances tol;

  auto add_common = [&](CLI::App* cmd, bool with_algebra) {
    if (with_algebra)
      cmd->add_option("--algebra", algebra, "algebra descriptor (mat:n, spin:n, h3o, sum:...)");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--out", out_path, "write the JSON report to this path");
    cmd->add_option("--tol-eq", tol.eq_tol, "metric equality tolerance");
    cmd->add_option("--tol-residual", tol.residual_tol, "algebraic residual tolerance");
  };

  auto* suite_cmd = app.add_subcommand("suite", "run a named invariant battery");
  std::string suite_name = "all";
  suite_cmd->add_option("--suite", suite_name, "one of: axioms, spectral, projections, spheres, two-proj, spin, glennie, tingley, all");
  suite_cmd->add_option("--samples", samples, "sample count per check");
  add_common(suite_cmd, true);

  auto* tp_cmd = app.add_subcommand("two-proj", "two-projection canonical form");
  bool tp_random = false;
  std::string p_json, q_json;
  tp_cmd->add_flag("--random", tp_random, "draw a random projection pair");
  tp_cmd->add_option("--p", p_json, "projection coordinates as JSON (inline or @file)");
  tp_cmd->add_option("--q", q_json, "projection coordinates as JSON (inline or @file)");
  add_common(tp_cmd, true);

  auto* sc_cmd = app.add_subcommand("spin-counterexample",
                                    "hemisphere lattice map between spin:3 and spin:4");
  int sc_samples = 1000;
  sc_cmd->add_option("--samples", sc_samples, "sampled projection pairs");
  add_common(sc_cmd, false);

  auto* gl_cmd = app.add_subcommand("glennie", "s-identity residuals and violation search");
  int trials = 10000;
  double threshold = 1e-3;
  gl_cmd->add_option("--trials", trials, "search trials");
  gl_cmd->add_option("--threshold", threshold, "violation norm threshold");
  add_common(gl_cmd, true);

  auto* ti_cmd = app.add_subcommand("tingley", "sphere-isometry extension round trip");
  std::string perturb;
  ti_cmd->add_option("--perturb", perturb,
                     "perturbation kind (interior-square, interior-cube)");
  add_common(ti_cmd, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite_cmd->parsed()) {
      bool known = false;
      for (const auto& n : suite_names()) known = known || n == suite_name;
      if (!known) {
        std::cerr << "unknown suite '" << suite_name << "'\n";
        return 2;
      }
      return run_suite_cmd({suite_name, algebra, seed, samples, tol}, out_path);
    }
    if (tp_cmd->parsed())
      return run_two_proj(algebra, tp_random, seed, p_json, q_json, tol, out_path);
    if (sc_cmd->parsed()) return run_spin_counterexample(seed, sc_samples, tol, out_path);
    if (gl_cmd->parsed())
      return run_glennie(algebra, trials, seed, threshold, tol, out_path);
    if (ti_cmd->parsed()) return run_tingley(algebra, seed, perturb, tol, out_path);
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
