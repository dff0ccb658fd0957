#include "dualcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualcert/rng.hpp"
#include "dualcert/version.hpp"
#include "json.hpp"
#include "spd_solver.hpp"

namespace dualcert {

namespace {

// RNG stream ids; fixed so certificates are reproducible sample-by-sample.
constexpr std::uint64_t kStreamPrimalBall = 101;
constexpr std::uint64_t kStreamVstarBall = 102;
constexpr std::uint64_t kStreamMultistart = 103;
constexpr std::uint64_t kStreamVstarBox = 104;
constexpr std::uint64_t kStreamMultiplierProbes = 105;
constexpr std::uint64_t kStreamJointVstar = 106;
constexpr std::uint64_t kStreamJointV0 = 107;
constexpr std::uint64_t kStreamLegendre1 = 110;
constexpr std::uint64_t kStreamLegendre2 = 111;
constexpr std::uint64_t kStreamLegendre3 = 112;

// Fixed number of multiplier probes for the E*-restricted inner sup.
constexpr long kEstarProbes = 64;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Radii {
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

Radii resolve_radii(const CertifyConfig& cfg, const Eigen::VectorXd& x0, const DualPoint& dual) {
  Radii radii;
  radii.r = cfg.r > 0.0 ? cfg.r : 0.05 * (1.0 + x0.norm());
  radii.r1 = cfg.r1 > 0.0 ? cfg.r1 : 0.05 * (1.0 + dual.v_star.norm());
  radii.r2 = cfg.r2 > 0.0 ? cfg.r2 : multiplier_box_radius(dual.v0_star);
  return radii;
}

double value_slack(double reference_value) { return 1e-10 * (1.0 + std::abs(reference_value)); }

void finalize(SamplingRecord& rec, double worst) {
  rec.worst_margin = std::isfinite(worst) ? worst : 0.0;
}

}  // namespace

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::local_min: return "item1_local_min";
    case CaseLabel::global_min: return "item2_global_min";
    case CaseLabel::local_max: return "item3_local_max";
    case CaseLabel::degenerate: return "degenerate";
    case CaseLabel::unclassified: return "unclassified";
  }
  return "unclassified";
}

GapReport check_zero_gap(const ProblemInstance& inst, const Eigen::VectorXd& x0, double K) {
  GapReport report;
  report.grad_norm = primal_gradient(inst, x0).norm();
  report.stationary = report.grad_norm <= 1e-6 * (1.0 + inst.f.norm());

  const Eigen::VectorXd v0 = dual_multipliers(inst, x0);
  const Eigen::VectorXd v_star = dual_vector(inst, x0, v0, K);
  const double primal = primal_value(inst, x0);
  const double dual = dual_value(inst, v_star, v0, K);
  report.gap_abs = std::abs(primal - dual);
  report.gap_rel = report.gap_abs / (1.0 + std::abs(primal));
  return report;
}

double check_dual_stationarity(const ProblemInstance& inst, const Eigen::VectorXd& x0, double K) {
  const Eigen::VectorXd v0 = dual_multipliers(inst, x0);
  const Eigen::VectorXd v_star = dual_vector(inst, x0, v0, K);
  return dual_gradient(inst, v_star, v0, K).norm();
}

InnerSup inner_multiplier_sup(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                              const Eigen::VectorXd& center, double radius, double K) {
  InnerSup result;
  Eigen::VectorXd u = center;
  double best = dual_value(inst, v_star, u, K);
  int stagnant = 0;

  for (int it = 0; it < 60; ++it) {
    result.iterations = it;
    const Eigen::VectorXd g = dual_gradient(inst, v_star, u, K).v0_block;

    // Project out the blocked outward component when pinned to the sphere.
    Eigen::VectorXd pg = g;
    const Eigen::VectorXd offset = u - center;
    const double dist = offset.norm();
    if (dist >= radius * (1.0 - 1e-12) && dist > 0.0) {
      const Eigen::VectorXd outward = offset / dist;
      const double along = g.dot(outward);
      if (along > 0.0) pg -= along * outward;
    }
    const double pg_norm = pg.norm();
    if (pg_norm <= 1e-11 * (1.0 + std::abs(best))) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd step;
    const Eigen::MatrixXd h = dual_multiplier_hessian(inst, v_star, u, K);
    Eigen::LLT<Eigen::MatrixXd> llt(-h);
    if (llt.info() == Eigen::Success) {
      step = llt.solve(g);
    } else {
      // Not concave here (possible for an overridden K); plain ascent.
      step = g * (radius / (4.0 * (1.0 + g.norm())));
    }
    if (!step.allFinite()) break;

    // Accept non-decreasing trials: near the maximum the value is flat to
    // double precision while Newton still refines the argmax.
    const double noise = 1e-15 * (1.0 + std::abs(best));
    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt <= 30; ++bt) {
      Eigen::VectorXd trial = u + alpha * step;
      const Eigen::VectorXd d = trial - center;
      if (const double dn = d.norm(); dn > radius) trial = center + d * (radius / dn);
      double val = -kInf;
      try {
        val = dual_value(inst, v_star, trial, K);
      } catch (const PreconditionError&) {
        alpha *= 0.5;
        continue;
      }
      if (val >= best - noise) {
        stagnant = (val - best <= noise) ? stagnant + 1 : 0;
        u = trial;
        best = std::max(best, val);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      result.converged = pg_norm <= 1e-8 * (1.0 + std::abs(best));
      break;
    }
    if (stagnant >= 2) {
      // The value stopped moving; the sup itself is converged.
      result.converged = true;
      break;
    }
  }

  result.value = best;
  result.argmax = u;
  return result;
}

std::vector<SamplingRecord> verify_local_min(const ProblemInstance& inst,
                                             const Eigen::VectorXd& x0, const DualPoint& dual,
                                             const CertifyConfig& cfg) {
  const HessianReport hr = classify_hessian(primal_hessian(inst, x0));
  if (hr.label != HessianClass::positive_definite)
    throw PreconditionError("primal Hessian at x0 (positive definiteness required)",
                            hr.lambda_min);

  const Radii radii = resolve_radii(cfg, x0, dual);
  const double primal_ref = primal_value(inst, x0);
  const double dual_ref = dual_value(inst, dual.v_star, dual.v0_star, dual.K);
  const double slack = value_slack(primal_ref);

  SamplingRecord primal_rec{"primal_ball_lower"};
  double worst = kInf;
  for (long i = 0; i < cfg.samples; ++i) {
    SampleRng rng(cfg.seed, kStreamPrimalBall, static_cast<std::uint64_t>(i));
    const double margin = primal_value(inst, rng.ball_point(x0, radii.r)) - primal_ref;
    worst = std::min(worst, margin);
    ++primal_rec.checked;
    if (margin < -slack) ++primal_rec.violations;
  }
  finalize(primal_rec, worst);

  SamplingRecord infsup_rec{"dual_ball_infsup"};
  worst = kInf;
  for (long i = 0; i < cfg.samples; ++i) {
    SampleRng rng(cfg.seed, kStreamVstarBall, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd v = rng.ball_point(dual.v_star, radii.r1);
    try {
      const InnerSup sup = inner_multiplier_sup(inst, v, dual.v0_star, radii.r2, dual.K);
      if (!sup.converged) ++infsup_rec.newton_failures;
      const double margin = sup.value - dual_ref;
      worst = std::min(worst, margin);
      ++infsup_rec.checked;
      if (margin < -slack) ++infsup_rec.violations;
    } catch (const PreconditionError&) {
      ++infsup_rec.skipped;
    }
  }
  finalize(infsup_rec, worst);

  // At v* itself the inner sup must reproduce J*(v*, v0*) exactly.
  SamplingRecord center_rec{"dual_center_sup"};
  const InnerSup center_sup =
      inner_multiplier_sup(inst, dual.v_star, dual.v0_star, radii.r2, dual.K);
  if (!center_sup.converged) ++center_rec.newton_failures;
  center_rec.checked = 1;
  center_rec.worst_margin = 0.0 - std::abs(center_sup.value - dual_ref);  // avoids -0
  if (center_rec.worst_margin < -slack) ++center_rec.violations;

  return {primal_rec, infsup_rec, center_rec};
}

GlobalMinEvidence verify_global_min(const ProblemInstance& inst, const Eigen::VectorXd& x0,
                                    const DualPoint& dual, const CertifyConfig& cfg) {
  const ConeMembership mem = cone_membership(inst, dual.v0_star, dual.K);
  if (!mem.in_Estar)
    throw PreconditionError("multipliers outside E* = A+* intersect B*",
                            std::min(mem.margin_Aplus, mem.margin_Bstar));

  const Radii radii = resolve_radii(cfg, x0, dual);
  const double primal_ref = primal_value(inst, x0);
  const double dual_ref = dual_value(inst, dual.v_star, dual.v0_star, dual.K);
  const double slack = value_slack(primal_ref);

  GlobalMinEvidence evidence;

  // (a) multistart search for a lower critical point
  SamplingRecord ms_rec{"multistart_no_lower"};
  double worst = kInf;
  const double init_scale = 2.0 * (1.0 + x0.norm());
  for (int i = 0; i < cfg.multistart; ++i) {
    SampleRng rng(cfg.seed, kStreamMultistart, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd x_init = init_scale * rng.normal_vector(inst.dim);
    const PrimalPoint pp = find_critical_point(inst, x_init);
    if (!pp.converged) {
      ++ms_rec.skipped;
      continue;
    }
    evidence.critical_values.push_back(pp.value);
    const double margin = pp.value - primal_ref;
    worst = std::min(worst, margin);
    ++ms_rec.checked;
    if (margin < -slack) ++ms_rec.violations;
  }
  finalize(ms_rec, worst);

  // (b) v* over a large box; inner sup restricted to the E* part of the
  // multiplier ball via a fixed rejection-sampled probe set.
  std::vector<Eigen::VectorXd> probes;
  probes.push_back(dual.v0_star);
  for (long k = 0; k < kEstarProbes; ++k) {
    SampleRng rng(cfg.seed, kStreamMultiplierProbes, static_cast<std::uint64_t>(k));
    const Eigen::VectorXd u = rng.ball_point(dual.v0_star, radii.r2);
    if (cone_membership(inst, u, dual.K).in_Estar) probes.push_back(u);
  }

  SamplingRecord box_rec{"dual_box_infsup"};
  worst = kInf;
  const double box_radius = 10.0 * (1.0 + dual.v_star.norm());
  for (long i = 0; i < cfg.samples; ++i) {
    SampleRng rng(cfg.seed, kStreamVstarBox, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd v = rng.box_point(dual.v_star, box_radius);
    double sup = -kInf;
    for (const auto& u : probes) {
      try {
        sup = std::max(sup, dual_value(inst, v, u, dual.K));
      } catch (const PreconditionError&) {
      }
    }
    if (!std::isfinite(sup)) {
      ++box_rec.skipped;
      continue;
    }
    const double margin = sup - dual_ref;
    worst = std::min(worst, margin);
    ++box_rec.checked;
    if (margin < -slack) ++box_rec.violations;
  }
  finalize(box_rec, worst);

  // (c) unconstrained stationarity in v* at the dual point
  SamplingRecord stat_rec{"dual_vstar_stationarity"};
  const double residual = dual_gradient(inst, dual.v_star, dual.v0_star, dual.K).v_star_block.norm();
  const double stat_scale = 1.0 + dual.v_star.norm() + inst.f.norm();
  stat_rec.checked = 1;
  stat_rec.worst_margin = cfg.stat_tol * stat_scale - residual;
  if (residual > cfg.stat_tol * stat_scale) ++stat_rec.violations;

  evidence.records = {ms_rec, box_rec, stat_rec};
  return evidence;
}

std::vector<SamplingRecord> verify_local_max(const ProblemInstance& inst,
                                             const Eigen::VectorXd& x0, const DualPoint& dual,
                                             const CertifyConfig& cfg) {
  const HessianReport hr = classify_hessian(primal_hessian(inst, x0));
  if (hr.label != HessianClass::negative_definite)
    throw PreconditionError("primal Hessian at x0 (negative definiteness required)",
                            -hr.lambda_max);
  const ConeMembership mem = cone_membership(inst, dual.v0_star, dual.K);
  if (!mem.in_Aminus)
    throw PreconditionError("multipliers outside A-*", -mem.margin_Aminus);

  const Radii radii = resolve_radii(cfg, x0, dual);
  const double primal_ref = primal_value(inst, x0);
  const double dual_ref = dual_value(inst, dual.v_star, dual.v0_star, dual.K);
  const double slack = value_slack(primal_ref);

  SamplingRecord primal_rec{"primal_ball_upper"};
  double worst = kInf;
  for (long i = 0; i < cfg.samples; ++i) {
    SampleRng rng(cfg.seed, kStreamPrimalBall, static_cast<std::uint64_t>(i));
    const double margin = primal_ref - primal_value(inst, rng.ball_point(x0, radii.r));
    worst = std::min(worst, margin);
    ++primal_rec.checked;
    if (margin < -slack) ++primal_rec.violations;
  }
  finalize(primal_rec, worst);

  // Joint upper bound: J* <= J*(v*, v0*) over the product of the two balls.
  SamplingRecord joint_rec{"dual_joint_ball"};
  worst = kInf;
  for (long i = 0; i < cfg.samples; ++i) {
    SampleRng rng_v(cfg.seed, kStreamJointVstar, static_cast<std::uint64_t>(i));
    SampleRng rng_u(cfg.seed, kStreamJointV0, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd v = rng_v.ball_point(dual.v_star, radii.r1);
    const Eigen::VectorXd u = rng_u.ball_point(dual.v0_star, radii.r2);
    try {
      const double margin = dual_ref - dual_value(inst, v, u, dual.K);
      worst = std::min(worst, margin);
      ++joint_rec.checked;
      if (margin < -slack) ++joint_rec.violations;
    } catch (const PreconditionError&) {
      ++joint_rec.skipped;
    }
  }
  finalize(joint_rec, worst);

  return {primal_rec, joint_rec};
}

LegendreReport check_legendre_identities(const ProblemInstance& inst, const CertifyConfig& cfg) {
  LegendreReport report;

  // A K that keeps K I + A definite for sure and the anchor matrix definite
  // for all but extreme multiplier draws (those are skipped and counted).
  double form_norm_sum = 0.0;
  for (const auto& b : inst.B) form_norm_sum += detail::spectral_norm(b);
  const double lambda_min_A = detail::sym_extremes(inst.A).lambda_min;
  const double K = 2.0 * (1.0 + std::max(-lambda_min_A, 3.0 * form_norm_sum));

  for (long i = 0; i < cfg.samples; ++i) {
    // L1: sup over the multipliers of J1(x, .) touches J at the closed-form
    // maximizer.
    {
      SampleRng rng(cfg.seed, kStreamLegendre1, static_cast<std::uint64_t>(i));
      const Eigen::VectorXd x = rng.normal_vector(inst.dim);
      const double reference = primal_value(inst, x);
      const double touched = multiplier_value(inst, x, dual_multipliers(inst, x));
      report.L1 = std::max(report.L1,
                           std::abs(touched - reference) / (1.0 + std::abs(reference)));
    }
    // L2: min over v* of J2 at v* = M x recovers J1.
    {
      SampleRng rng(cfg.seed, kStreamLegendre2, static_cast<std::uint64_t>(i));
      const Eigen::VectorXd x = rng.normal_vector(inst.dim);
      const Eigen::VectorXd v0 = rng.normal_vector(inst.num_terms);
      try {
        const Eigen::VectorXd v_star = dual_vector(inst, x, v0, K);
        const double reference = multiplier_value(inst, x, v0);
        const double minimized = split_value(inst, x, v_star, v0, K);
        report.L2 = std::max(report.L2,
                             std::abs(minimized - reference) / (1.0 + std::abs(reference)));
      } catch (const PreconditionError&) {
        ++report.skipped;
      }
    }
    // L3: min over x of J2 at x = (K I + A)^-1 (v* + f) recovers J*.
    {
      SampleRng rng(cfg.seed, kStreamLegendre3, static_cast<std::uint64_t>(i));
      const Eigen::VectorXd v_star = rng.normal_vector(inst.dim);
      const Eigen::VectorXd v0 = rng.normal_vector(inst.num_terms);
      try {
        const Eigen::MatrixXd shifted =
            K * Eigen::MatrixXd::Identity(inst.dim, inst.dim) + inst.A;
        const Eigen::VectorXd x_hat =
            detail::SpdSolver("K*I + A", shifted).solve(v_star + inst.f);
        const double reference = dual_value(inst, v_star, v0, K);
        const double minimized = split_value(inst, x_hat, v_star, v0, K);
        report.L3 = std::max(report.L3,
                             std::abs(minimized - reference) / (1.0 + std::abs(reference)));
      } catch (const PreconditionError&) {
        ++report.skipped;
      }
    }
  }
  return report;
}

Certificate certify(const ProblemInstance& inst, const Eigen::VectorXd& x_init,
                    const CertifyConfig& cfg) {
  {
    const ValidationReport vr = validate(inst);
    if (!vr.ok) throw ValidationError(vr.violations.front().field,
                                      vr.violations.front().description);
  }
  if (!(cfg.gap_tol > 0.0) || !(cfg.stat_tol > 0.0) || cfg.samples < 0 || cfg.multistart < 0)
    throw DimensionError("certify: config tolerances must be positive and counts non-negative");

  Certificate cert;
  cert.instance_digest = instance_digest(inst);
  cert.instance_name = inst.name;
  cert.x_init = x_init;
  cert.samples = cfg.samples;
  cert.seed = cfg.seed;
  cert.gap_tol = cfg.gap_tol;
  cert.stat_tol = cfg.stat_tol;
  cert.multistart = cfg.multistart;
  cert.K_overridden = cfg.K_override.has_value();

  cert.primal = find_critical_point(inst, x_init);
  const Eigen::VectorXd v0 = dual_multipliers(inst, cert.primal.x0);

  if (cfg.K_override) {
    const double K = *cfg.K_override;
    const Eigen::MatrixXd shifted =
        K * Eigen::MatrixXd::Identity(inst.dim, inst.dim) + inst.A;
    const detail::SymExtremes ex_quad = detail::sym_extremes(shifted);
    if (!(ex_quad.lambda_min >= kPdTol * (1.0 + ex_quad.spectral_norm())))
      throw PreconditionError("K*I + A", ex_quad.lambda_min);
    const detail::SymExtremes ex_anchor = detail::sym_extremes(anchor_matrix(inst, v0, K));
    if (!(ex_anchor.lambda_min >= kPdTol * (1.0 + ex_anchor.spectral_norm())))
      throw PreconditionError("M(v0, K)", ex_anchor.lambda_min);

    double form_norm_sum = 0.0;
    for (const auto& b : inst.B) form_norm_sum += detail::spectral_norm(b);
    cert.regularization.K = K;
    cert.regularization.K0 = K;
    cert.regularization.doublings = 0;
    cert.regularization.margin_quadratic = ex_quad.lambda_min;
    cert.regularization.margin_anchor_box =
        ex_anchor.lambda_min - multiplier_box_radius(v0) * form_norm_sum;
    const Eigen::VectorXd v_star = dual_vector(inst, cert.primal.x0, v0, K);
    cert.regularization.margin_concavity =
        -detail::sym_extremes(dual_multiplier_hessian(inst, v_star, v0, K)).lambda_max;
  } else {
    cert.regularization = select_regularization(inst, v0, cert.primal.x0);
  }

  const double K = cert.regularization.K;
  cert.dual = DualPoint{dual_vector(inst, cert.primal.x0, v0, K), v0, K};
  cert.membership = cone_membership(inst, v0, K);

  const GapReport gap = check_zero_gap(inst, cert.primal.x0, K);
  cert.dual_objective = dual_value(inst, cert.dual.v_star, cert.dual.v0_star, K);
  cert.gap_abs = gap.gap_abs;
  cert.gap_rel = gap.gap_rel;
  cert.dual_stationarity = check_dual_stationarity(inst, cert.primal.x0, K);

  const Radii radii = resolve_radii(cfg, cert.primal.x0, cert.dual);
  cert.r = radii.r;
  cert.r1 = radii.r1;
  cert.r2 = radii.r2;

  if (!cert.primal.converged) {
    cert.case_label = CaseLabel::unclassified;
    cert.diagnostic = "critical-point solver did not converge: |grad J| = " +
                      std::to_string(cert.primal.grad_norm) + " after " +
                      std::to_string(cert.primal.iterations) + " iterations";
  } else {
    switch (cert.primal.hessian_class) {
      case HessianClass::positive_definite:
        if (cert.membership.in_Estar) {
          cert.case_label = CaseLabel::global_min;
          GlobalMinEvidence evidence = verify_global_min(inst, cert.primal.x0, cert.dual, cfg);
          cert.sampling = std::move(evidence.records);
          cert.multistart_values = std::move(evidence.critical_values);
        } else {
          cert.case_label = CaseLabel::local_min;
          cert.sampling = verify_local_min(inst, cert.primal.x0, cert.dual, cfg);
        }
        break;
      case HessianClass::negative_definite:
        if (cert.membership.in_Aminus) {
          cert.case_label = CaseLabel::local_max;
          cert.sampling = verify_local_max(inst, cert.primal.x0, cert.dual, cfg);
        } else {
          cert.case_label = CaseLabel::unclassified;
        }
        break;
      case HessianClass::degenerate:
        cert.case_label = CaseLabel::degenerate;
        break;
      case HessianClass::indefinite:
        cert.case_label = CaseLabel::unclassified;
        break;
    }
  }

  cert.legendre = check_legendre_identities(inst, cfg);

  long total_violations = 0;
  for (const auto& rec : cert.sampling) total_violations += rec.violations;
  const double stat_scale = 1.0 + cert.dual.v_star.norm() + inst.f.norm();
  cert.passed = cert.primal.converged && cert.gap_rel <= cfg.gap_tol &&
                cert.dual_stationarity <= cfg.stat_tol * stat_scale && total_violations == 0;
  return cert;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

std::string save_certificate(const Certificate& cert) {
  ordered_json doc;
  doc["spec_version"] = std::string(kCertificateSchemaVersion);
  doc["tool_version"] = std::string(kToolVersion);
  doc["instance_digest"] = cert.instance_digest;
  doc["instance_name"] = cert.instance_name;

  ordered_json config;
  config["x_init"] = vector_to_json(cert.x_init);
  config["r"] = cert.r;
  config["r1"] = cert.r1;
  config["r2"] = cert.r2;
  config["samples"] = cert.samples;
  config["seed"] = cert.seed;
  config["gap_tol"] = cert.gap_tol;
  config["stat_tol"] = cert.stat_tol;
  config["multistart"] = cert.multistart;
  config["K_mode"] = cert.K_overridden ? "override" : "auto";
  doc["config"] = std::move(config);

  ordered_json primal;
  primal["x0"] = vector_to_json(cert.primal.x0);
  primal["value"] = cert.primal.value;
  primal["grad_norm"] = cert.primal.grad_norm;
  primal["hessian_class"] = to_string(cert.primal.hessian_class);
  primal["hessian_lambda_min"] = cert.primal.hessian_lambda_min;
  primal["hessian_lambda_max"] = cert.primal.hessian_lambda_max;
  primal["iterations"] = cert.primal.iterations;
  primal["converged"] = cert.primal.converged;
  doc["primal"] = std::move(primal);

  ordered_json dual;
  dual["v_star"] = vector_to_json(cert.dual.v_star);
  dual["v0_star"] = vector_to_json(cert.dual.v0_star);
  dual["K"] = cert.dual.K;
  doc["dual"] = std::move(dual);

  ordered_json reg;
  reg["K"] = cert.regularization.K;
  reg["K0"] = cert.regularization.K0;
  reg["doublings"] = cert.regularization.doublings;
  reg["margin_quadratic"] = cert.regularization.margin_quadratic;
  reg["margin_anchor_box"] = cert.regularization.margin_anchor_box;
  reg["margin_concavity"] = cert.regularization.margin_concavity;
  doc["regularization"] = std::move(reg);

  ordered_json membership;
  membership["in_Bstar"] = cert.membership.in_Bstar;
  membership["margin_Bstar"] = cert.membership.margin_Bstar;
  membership["in_Aplus"] = cert.membership.in_Aplus;
  membership["margin_Aplus"] = cert.membership.margin_Aplus;
  membership["in_Aminus"] = cert.membership.in_Aminus;
  membership["margin_Aminus"] = cert.membership.margin_Aminus;
  membership["in_Estar"] = cert.membership.in_Estar;
  membership["M_pd"] = cert.membership.M_pd;
  membership["margin_M"] = cert.membership.margin_M;
  doc["membership"] = std::move(membership);

  doc["dual_value"] = cert.dual_objective;
  doc["gap_abs"] = cert.gap_abs;
  doc["gap_rel"] = cert.gap_rel;
  doc["dual_stationarity"] = cert.dual_stationarity;
  doc["case_label"] = to_string(cert.case_label);

  ordered_json sampling = ordered_json::array();
  for (const auto& rec : cert.sampling) {
    ordered_json r;
    r["check"] = rec.check;
    r["checked"] = rec.checked;
    r["violations"] = rec.violations;
    r["skipped"] = rec.skipped;
    r["newton_failures"] = rec.newton_failures;
    r["worst_margin"] = rec.worst_margin;
    sampling.push_back(std::move(r));
  }
  doc["sampling"] = std::move(sampling);

  ordered_json legendre;
  legendre["L1"] = cert.legendre.L1;
  legendre["L2"] = cert.legendre.L2;
  legendre["L3"] = cert.legendre.L3;
  legendre["skipped"] = cert.legendre.skipped;
  doc["legendre"] = std::move(legendre);

  ordered_json ms = ordered_json::array();
  for (double v : cert.multistart_values) ms.push_back(v);
  doc["multistart_values"] = std::move(ms);

  doc["diagnostic"] = cert.diagnostic;
  doc["passed"] = cert.passed;
  return doc.dump(2) + "\n";
}

}  // namespace dualcert
