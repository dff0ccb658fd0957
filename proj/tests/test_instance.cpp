#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dualcert/instance.hpp"
#include "dualcert/primal.hpp"
#include "dualcert/rng.hpp"
#include "fixtures.hpp"

using namespace dualcert;

TEST_CASE("validate accepts the references and rejects bad weights") {
  CHECK(validate(fixtures::inst_a()).ok);
  CHECK(validate(fixtures::inst_b()).ok);

  auto inst = fixtures::inst_a();
  inst.gamma[0] = 0.0;
  const auto report = validate(inst);
  CHECK_FALSE(report.ok);
  REQUIRE_EQ(report.violations.size(), 1);
  CHECK_EQ(report.violations[0].field, "gamma");
}

TEST_CASE("validate reports asymmetry with the measured skew") {
  ProblemInstance inst;
  inst.dim = 2;
  inst.num_terms = 1;
  inst.A.setZero(2, 2);
  inst.A(0, 1) = 1.0;  // |A - A'|_max = 1
  inst.B = {Eigen::MatrixXd::Identity(2, 2)};
  inst.gamma = Eigen::VectorXd::Constant(1, 1.0);
  inst.c = Eigen::VectorXd::Zero(1);
  inst.f = Eigen::VectorXd::Zero(2);

  const auto report = validate(inst);
  CHECK_FALSE(report.ok);
  REQUIRE_EQ(report.violations.size(), 1);
  CHECK_EQ(report.violations[0].field, "A");
  CHECK_EQ(report.violations[0].measured, 1.0);
}

TEST_CASE("validate flags dimension mismatches without throwing") {
  auto inst = fixtures::inst_a();
  inst.f = Eigen::VectorXd::Zero(3);
  const auto report = validate(inst);
  CHECK_FALSE(report.ok);
  CHECK_EQ(report.violations[0].field, "f");
}

TEST_CASE("load round-trips the reference instance") {
  const auto inst = fixtures::inst_a();
  const std::string bytes = save_instance(inst);
  const auto loaded = load_instance(bytes);
  CHECK_EQ(loaded.dim, 1);
  CHECK_EQ(loaded.num_terms, 1);
  CHECK_EQ(loaded.A(0, 0), 1.0);
  CHECK_EQ(loaded.c[0], -1.0);
  CHECK_EQ(loaded.name, "INST-A");
  // canonical form is a fixed point of load-then-save
  CHECK_EQ(save_instance(loaded), bytes);
}

TEST_CASE("missing fields are parse errors naming the field") {
  const std::string doc = R"({"n":1,"N":1,"A":[[1.0]],"B":[[[2.0]]],"gamma":[1.0],"c":[-1.0]})";
  CHECK_THROWS_WITH_AS(load_instance(doc), "parse error at \"f\": missing field", ParseError);
}

TEST_CASE("strict load rejects invalid instances, lenient load keeps them") {
  const std::string doc =
      R"({"n":1,"N":1,"A":[[1.0]],"B":[[[2.0]]],"gamma":[0.0],"c":[-1.0],"f":[0.0]})";
  CHECK_THROWS_AS(load_instance(doc), ValidationError);
  const auto inst = load_instance(doc, /*strict=*/false);
  CHECK_EQ(inst.gamma[0], 0.0);
}

TEST_CASE("save is deterministic and load-save is the identity on generated instances") {
  for (std::uint64_t seed : {0, 1, 2, 17, 99}) {
    const auto inst = generate_random(seed, 3 + seed % 4, 1 + seed % 3, CaseTarget::unbiased);
    const std::string bytes = save_instance(inst);
    CHECK_EQ(bytes, save_instance(inst));

    const auto loaded = load_instance(bytes);
    CHECK_EQ(loaded.dim, inst.dim);
    CHECK_EQ(loaded.num_terms, inst.num_terms);
    CHECK_EQ(loaded.A, inst.A);  // bit-exact through shortest round-trip text
    for (Eigen::Index j = 0; j < inst.num_terms; ++j) CHECK_EQ(loaded.B[j], inst.B[j]);
    CHECK_EQ(loaded.gamma, inst.gamma);
    CHECK_EQ(loaded.c, inst.c);
    CHECK_EQ(loaded.f, inst.f);
    CHECK_EQ(loaded.name, inst.name);
    REQUIRE(loaded.seed.has_value());
    CHECK_EQ(*loaded.seed, static_cast<std::int64_t>(seed));
  }
}

TEST_CASE("term order changes the bytes but not the functional") {
  auto inst = generate_random(5, 4, 3, CaseTarget::unbiased);
  auto permuted = inst;
  std::swap(permuted.B[0], permuted.B[2]);
  std::swap(permuted.gamma[0], permuted.gamma[2]);
  std::swap(permuted.c[0], permuted.c[2]);

  CHECK_NE(save_instance(inst), save_instance(permuted));
  for (int i = 0; i < 100; ++i) {
    SampleRng rng(42, 9, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd x = rng.normal_vector(4);
    const double a = primal_value(inst, x);
    const double b = primal_value(permuted, x);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("generation is deterministic in the seed and always valid") {
  const auto first = generate_random(7, 3, 2, CaseTarget::unbiased);
  const auto second = generate_random(7, 3, 2, CaseTarget::unbiased);
  CHECK_EQ(save_instance(first), save_instance(second));

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    for (auto target : {CaseTarget::convex_at_root, CaseTarget::global_min,
                        CaseTarget::local_max, CaseTarget::unbiased}) {
      const auto inst =
          generate_random(seed, 1 + seed % 6, 1 + seed % 4, target);
      CHECK(validate(inst).ok);
    }
  }
}

TEST_CASE("global_min target forces a definite quadratic and positive offsets") {
  const auto inst = generate_random(1, 4, 2, CaseTarget::global_min);
  const auto hess_at_zero = classify_hessian(inst.A);
  CHECK(hess_at_zero.lambda_min > 0.0);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) CHECK(inst.c[j] > 0.0);
}

TEST_CASE("biased targets force the sign of the Hessian at the origin") {
  for (std::uint64_t seed : {2, 9, 31}) {
    const auto lm = generate_random(seed, 5, 3, CaseTarget::local_max);
    Eigen::MatrixXd combo = lm.A;
    for (Eigen::Index j = 0; j < lm.num_terms; ++j)
      combo += lm.gamma[j] * lm.c[j] * lm.B[j];
    CHECK_EQ(classify_hessian(combo).label, HessianClass::negative_definite);

    const auto cv = generate_random(seed, 5, 3, CaseTarget::convex_at_root);
    combo = cv.A;
    for (Eigen::Index j = 0; j < cv.num_terms; ++j)
      combo += cv.gamma[j] * cv.c[j] * cv.B[j];
    CHECK_EQ(classify_hessian(combo).label, HessianClass::positive_definite);
  }
}

TEST_CASE("generator rejects bad dimensions") {
  CHECK_THROWS_AS(generate_random(1, 0, 1, CaseTarget::unbiased), DimensionError);
  CHECK_THROWS_AS(generate_random(1, 1, 0, CaseTarget::unbiased), DimensionError);
}

TEST_CASE("digest is stable and sensitive to content") {
  const auto inst = fixtures::inst_a();
  const std::string digest = instance_digest(inst);
  CHECK_EQ(digest.size(), 64);
  CHECK_EQ(digest, instance_digest(inst));
  auto other = inst;
  other.c[0] = 1.0;
  CHECK_NE(digest, instance_digest(other));
}
