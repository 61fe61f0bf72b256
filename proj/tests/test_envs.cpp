#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gdr/envs.hpp"
#include "gdr/error.hpp"

namespace {

// Genome for obs=k, hidden=[1], act=k whose output is exactly tanh(b_out):
// every weight zero, output biases atanh(target).
gdr::Genome constant_output_genome(const gdr::PolicyArchitecture& arch, const std::vector<double>& target) {
  gdr::Genome g(gdr::param_count(arch));
  const std::size_t out_bias = g.size() - target.size();
  for (std::size_t i = 0; i < target.size(); ++i) g[out_bias + i] = std::atanh(target[i]);
  return g;
}

}  // namespace

TEST_CASE("env registry") {
  CHECK(gdr::make_env("point_mass").obs_dim == 4);
  CHECK(gdr::make_env("pendulum").horizon == 200);
  CHECK(gdr::make_env("static_target").horizon == 1);
  CHECK_THROWS_AS(gdr::make_env("half_cheetah"), gdr::ConfigError);
}

TEST_CASE("resets are fixed") {
  CHECK(gdr::env_reset(gdr::make_env("point_mass")).x == std::vector<double>{1.0, 1.0, 0.0, 0.0});
  CHECK(gdr::env_reset(gdr::make_env("pendulum")).x == std::vector<double>{std::numbers::pi, 0.0});
  const auto st = gdr::make_env("static_target");
  CHECK(gdr::observe(st, gdr::env_reset(st)) == std::vector<double>{1.0, 1.0});
}

TEST_CASE("point mass step") {
  const auto spec = gdr::make_env("point_mass");
  const auto s0 = gdr::env_reset(spec);
  const auto r = gdr::env_step(spec, s0, std::vector<double>{0.0, 0.0});
  CHECK(r.next.x == s0.x);
  CHECK(r.reward == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(r.done);

  // vel' = 0.1 a, pos' = pos + 0.1 vel'
  const auto r2 = gdr::env_step(spec, s0, std::vector<double>{1.0, -1.0});
  CHECK(r2.next.x[2] == doctest::Approx(0.1));
  CHECK(r2.next.x[3] == doctest::Approx(-0.1));
  CHECK(r2.next.x[0] == doctest::Approx(1.01));
  CHECK(r2.next.x[1] == doctest::Approx(0.99));

  // Out-of-range actions are clamped.
  CHECK(gdr::env_step(spec, s0, std::vector<double>{5.0, -3.0}).next.x == r2.next.x);
  CHECK_THROWS_AS(gdr::env_step(spec, s0, std::vector<double>{1.0}), gdr::InvalidInput);
}

TEST_CASE("pendulum step from the reset state") {
  const auto spec = gdr::make_env("pendulum");
  const auto r = gdr::env_step(spec, gdr::env_reset(spec), std::vector<double>{0.0});
  CHECK(std::abs(r.next.x[1]) < 1e-15);
  CHECK(r.next.x[0] == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(r.reward == doctest::Approx(-std::numbers::pi * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("pendulum hand step with torque and speed clamp") {
  const auto spec = gdr::make_env("pendulum");
  const gdr::EnvState s{{0.5, 1.0}, 0};
  const auto r = gdr::env_step(spec, s, std::vector<double>{0.5});
  const double omega = 1.0 + 0.05 * (-10.0 * std::sin(0.5) + 1.0);
  const double theta = 0.5 + 0.05 * omega;
  CHECK(r.next.x[1] == doctest::Approx(omega).epsilon(1e-15));
  CHECK(r.next.x[0] == doctest::Approx(theta).epsilon(1e-15));
  CHECK(r.reward == doctest::Approx(-(theta * theta + 0.1 * omega * omega + 0.001 * 1.0)).epsilon(1e-14));

  const gdr::EnvState fast{{0.0, 7.99}, 0};
  CHECK(gdr::env_step(spec, fast, std::vector<double>{1.0}).next.x[1] == 8.0);
}

TEST_CASE("wrap_angle maps to (-pi, pi]") {
  constexpr double pi = std::numbers::pi;
  CHECK(gdr::wrap_angle(pi) == pi);
  CHECK(gdr::wrap_angle(-pi) == pi);
  CHECK(gdr::wrap_angle(3.0 * pi) == doctest::Approx(pi));
  CHECK(gdr::wrap_angle(0.25) == 0.25);
  CHECK(gdr::wrap_angle(2.0 * pi + 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = gdr::wrap_angle(u(rng));
    CHECK(w > -pi);
    CHECK(w <= pi);
  }
}

TEST_CASE("static target step") {
  const auto spec = gdr::make_env("static_target");
  const auto r = gdr::env_step(spec, gdr::env_reset(spec), std::vector<double>{0.5, -0.5});
  CHECK(r.reward == 0.0);
  CHECK(r.done);
  CHECK(gdr::env_step(spec, gdr::env_reset(spec), std::vector<double>{0.0, 0.0}).reward == doctest::Approx(-0.5));
}

TEST_CASE("rollouts") {
  std::mt19937_64 rng(1);

  SUBCASE("zero policy on point mass") {
    const auto spec = gdr::make_env("point_mass");
    const gdr::PolicyArchitecture arch{4, 2, {8}};
    const auto r = gdr::rollout(spec, arch, gdr::Genome(gdr::param_count(arch)), 0.0, rng);
    CHECK(r.steps == 100);
    CHECK(r.transitions.size() == 100);
    CHECK(r.transitions.back().done);
    CHECK(r.fitness == doctest::Approx(-100.0 * std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("optimal static target policy") {
    const auto spec = gdr::make_env("static_target");
    const gdr::PolicyArchitecture arch{2, 2, {1}};
    const auto r = gdr::rollout(spec, arch, constant_output_genome(arch, {0.5, -0.5}), 0.0, rng);
    CHECK(r.fitness == doctest::Approx(0.0).epsilon(1e-28));
    CHECK(r.steps == 1);
  }
  SUBCASE("noiseless rollouts are repeatable and fitness sums rewards") {
    const auto spec = gdr::make_env("pendulum");
    const gdr::PolicyArchitecture arch{3, 1, {16, 16}};
    std::mt19937_64 init(3);
    const gdr::Genome g = gdr::init_genome(arch, init);
    std::mt19937_64 a(1), b(2);
    const auto r1 = gdr::rollout(spec, arch, g, 0.0, a);
    const auto r2 = gdr::rollout(spec, arch, g, 0.0, b);
    CHECK(r1.fitness == r2.fitness);
    double sum = 0.0;
    for (const auto& t : r1.transitions) sum += t.reward;
    CHECK(r1.fitness == sum);
    CHECK(r1.transitions.size() <= 200);
  }
  SUBCASE("exploration noise is seeded, clamped and buffered") {
    const auto spec = gdr::make_env("point_mass");
    const gdr::PolicyArchitecture arch{4, 2, {8}};
    std::mt19937_64 init(4);
    const gdr::Genome g = gdr::init_genome(arch, init);
    gdr::ReplayBuffer buf(4, 2, 1000);
    std::mt19937_64 a(9), b(9);
    const auto r1 = gdr::rollout(spec, arch, g, 2.0, a, &buf);
    const auto r2 = gdr::rollout(spec, arch, g, 2.0, b);
    CHECK(r1.fitness == r2.fitness);
    CHECK(buf.size() == 100);
    CHECK(buf.at(0) == r1.transitions.front());
    for (const auto& t : r1.transitions) {
      for (double v : t.action) CHECK(std::abs(v) <= 1.0);
    }
  }
  SUBCASE("architecture mismatch") {
    const auto spec = gdr::make_env("point_mass");
    const gdr::PolicyArchitecture arch{3, 2, {8}};
    CHECK_THROWS_AS(gdr::rollout(spec, arch, gdr::Genome(gdr::param_count(arch)), 0.0, rng), gdr::InvalidInput);
  }
}
