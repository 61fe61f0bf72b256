#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "gdr/td3.hpp"

namespace gdr {

/// Largest elementwise relative error |a - n| / max(|a|, |n|, floor) between
/// an analytic gradient and central finite differences, per loss.
struct GradcheckReport {
  int instances = 0;
  double critic = 0.0;
  double actor_none = 0.0;
  double actor_l2 = 0.0;
  double actor_squared_l2 = 0.0;

  double worst() const;
};

inline constexpr double kGradcheckStep = 1e-6;
inline constexpr double kGradcheckFloor = 1e-6;

double max_relative_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric,
                          double floor = kGradcheckFloor);

/// Random tiny instance: obs 3, hidden [4, 4], act 2, critics [4, 4], batch 5.
struct GradcheckInstance {
  Td3State state;
  Batch batch;
  Eigen::VectorXd targets;
  Genome es_center;
};

GradcheckInstance make_gradcheck_instance(std::mt19937_64& rng);

/// Central-difference gradient of the critic loss w.r.t. critic1 and critic2
/// (concatenated), built from loss evaluations only.
Eigen::VectorXd numeric_critic_grad(const GradcheckInstance& inst, double h = kGradcheckStep);
/// Central-difference gradient of actor_loss under `reg`.
Eigen::VectorXd numeric_actor_grad(const GradcheckInstance& inst, RegularizationMode reg,
                                   double h = kGradcheckStep);

GradcheckReport run_gradcheck(int instances, std::uint64_t seed);

}  // namespace gdr
