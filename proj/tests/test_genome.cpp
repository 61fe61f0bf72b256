#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gdr/error.hpp"
#include "gdr/genome.hpp"

using gdr::Genome;
using gdr::PolicyArchitecture;

namespace {

Genome random_genome(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = normal(rng);
  return Genome(v);
}

}  // namespace

TEST_CASE("param_count counts weights and biases") {
  CHECK(gdr::param_count({2, 1, {3}}) == 13);
  CHECK(gdr::param_count({1, 1, {1}}) == 4);
  CHECK(gdr::param_count({2, 2, {128, 128}}) == 2 * 128 + 128 + 128 * 128 + 128 + 128 * 2 + 2);
  CHECK(gdr::param_count({2, 2, {128, 128}}) == 17154);
}

TEST_CASE("invalid architectures are rejected") {
  CHECK_THROWS_AS(gdr::param_count({0, 1, {3}}), gdr::InvalidInput);
  CHECK_THROWS_AS(gdr::param_count({1, 1, {}}), gdr::InvalidInput);
  CHECK_THROWS_AS(gdr::param_count({1, 1, {4, 0}}), gdr::InvalidInput);
}

TEST_CASE("init_genome: zero biases, fan-in bounds, determinism") {
  const PolicyArchitecture arch{4, 2, {5, 3}};
  std::mt19937_64 rng_a(7), rng_b(7);
  const Genome a = gdr::init_genome(arch, rng_a);
  const Genome b = gdr::init_genome(arch, rng_b);
  CHECK(a == b);
  REQUIRE(a.size() == gdr::param_count(arch));

  // Layer-major layout: W (fan_out x fan_in) then b.
  const auto dims = arch.layer_dims();
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto fi = static_cast<std::size_t>(dims[l]);
    const auto fo = static_cast<std::size_t>(dims[l + 1]);
    const double bound = 1.0 / std::sqrt(static_cast<double>(fi));
    for (std::size_t i = 0; i < fi * fo; ++i) {
      CHECK(std::abs(a[off + i]) <= bound);
    }
    for (std::size_t i = 0; i < fo; ++i) CHECK(a[off + fi * fo + i] == 0.0);
    off += (fi + 1) * fo;
  }
  // fan_in = 4 first layer: |w| <= 0.5
  for (std::size_t i = 0; i < 20; ++i) CHECK(std::abs(a[i]) <= 0.5);
}

TEST_CASE("policy_forward hand-evaluated cases") {
  SUBCASE("two-layer scalar net") {
    const PolicyArchitecture arch{1, 1, {1}};
    Genome g(Eigen::Vector4d(1.0, 0.0, 1.0, 0.0));
    const std::vector<double> obs{2.0};
    const auto out = gdr::policy_forward(arch, g, obs);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == doctest::Approx(0.9640275800758169).epsilon(1e-15));
  }
  SUBCASE("zero genome gives zero action") {
    const PolicyArchitecture arch{3, 2, {4, 4}};
    const Genome g(gdr::param_count(arch));
    const auto out = gdr::policy_forward(arch, g, std::vector<double>{0.3, -2.0, 5.0});
    CHECK(out == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("negative pre-activations leave tanh of the output bias") {
    // obs=1, hidden=[1]: w1 = -1, b1 = 0, w2 = 3, b2 = 0.25; obs 2 -> ReLU(-2) = 0
    const PolicyArchitecture arch{1, 1, {1}};
    Genome g(Eigen::Vector4d(-1.0, 0.0, 3.0, 0.25));
    const auto out = gdr::policy_forward(arch, g, std::vector<double>{2.0});
    CHECK(out[0] == std::tanh(0.25));
  }
  SUBCASE("dimension mismatch") {
    const PolicyArchitecture arch{2, 1, {3}};
    const Genome g(gdr::param_count(arch));
    CHECK_THROWS_AS(gdr::policy_forward(arch, g, std::vector<double>{1.0}), gdr::InvalidInput);
    const Genome wrong(5);
    CHECK_THROWS_AS(gdr::policy_forward(arch, wrong, std::vector<double>{1.0, 2.0}), gdr::InvalidInput);
  }
}

TEST_CASE("policy_forward properties over random genomes") {
  std::mt19937_64 rng(11);
  const PolicyArchitecture arch{3, 2, {6, 5}};
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Genome g = random_genome(gdr::param_count(arch), rng, 0.8);
    const std::vector<double> obs{normal(rng), normal(rng), normal(rng)};
    for (double a : gdr::policy_forward(arch, g, obs)) {
      CHECK(a > -1.0);
      CHECK(a < 1.0);
    }
    // obs = 0 leaves only the biases: compose them by hand.
    const std::vector<double> zero{0.0, 0.0, 0.0};
    const auto out = gdr::policy_forward(arch, g, zero);
    // h1 = ReLU(b1), h2 = ReLU(W2 h1 + b2), out = tanh(W3 h2 + b3)
    const double* p = g.values().data();
    std::vector<double> h1(6), h2(5);
    for (int i = 0; i < 6; ++i) h1[static_cast<std::size_t>(i)] = std::max(0.0, p[18 + i]);
    p += 3 * 6 + 6;
    for (int o = 0; o < 5; ++o) {
      double z = p[30 + o];
      for (int i = 0; i < 6; ++i) z += p[o * 6 + i] * h1[static_cast<std::size_t>(i)];
      h2[static_cast<std::size_t>(o)] = std::max(0.0, z);
    }
    p += 6 * 5 + 5;
    for (int o = 0; o < 2; ++o) {
      double z = p[10 + o];
      for (int i = 0; i < 5; ++i) z += p[o * 5 + i] * h2[static_cast<std::size_t>(i)];
      CHECK(out[static_cast<std::size_t>(o)] == doctest::Approx(std::tanh(z)).epsilon(1e-14));
    }
  }
}

TEST_CASE("l2_distance") {
  const Genome a(Eigen::Vector2d(3.0, 4.0));
  const Genome zero(2);
  CHECK(gdr::l2_distance(a, zero) == 5.0);
  CHECK(gdr::l2_distance(a, a) == 0.0);
  CHECK(gdr::l2_distance(Genome(Eigen::Vector4d::Ones()), Genome(4)) == 2.0);
  CHECK_THROWS_AS(gdr::l2_distance(a, Genome(3)), gdr::InvalidInput);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Genome x = random_genome(17, rng), y = random_genome(17, rng), z = random_genome(17, rng);
    CHECK(gdr::l2_distance(x, y) == gdr::l2_distance(y, x));
    CHECK(gdr::l2_distance(x, z) <= gdr::l2_distance(x, y) + gdr::l2_distance(y, z) + 1e-12);
  }
}

TEST_CASE("genome rejects non-finite values") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  v[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Genome{v}, gdr::InvalidInput);
}

TEST_CASE("genome serialization round-trips and uses length-prefixed little-endian f64") {
  std::mt19937_64 rng(5);
  const Genome g = random_genome(9, rng);
  std::stringstream ss;
  gdr::write_genome(ss, g.values());
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 8 + 9 * 8);
  CHECK(static_cast<unsigned char>(bytes[0]) == 9);
  for (int i = 1; i < 8; ++i) CHECK(bytes[static_cast<std::size_t>(i)] == 0);
  CHECK(Genome(gdr::read_genome(ss)) == g);

  std::stringstream truncated(bytes.substr(0, 20));
  CHECK_THROWS_AS(gdr::read_genome(truncated), gdr::InvalidInput);
}
