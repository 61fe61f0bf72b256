#include "gdr/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace gdr {

double GradcheckReport::worst() const {
  return std::max({critic, actor_none, actor_l2, actor_squared_l2});
}

double max_relative_error(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric, double floor) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < analytic.size(); ++i) {
    const double a = analytic[i];
    const double n = numeric[i];
    const double denom = std::max({std::abs(a), std::abs(n), floor});
    worst = std::max(worst, std::abs(a - n) / denom);
  }
  return worst;
}

GradcheckInstance make_gradcheck_instance(std::mt19937_64& rng) {
  constexpr int kObs = 3;
  constexpr int kAct = 2;
  constexpr int kBatch = 5;
  const PolicyArchitecture arch{kObs, kAct, {4, 4}};
  const std::vector<int> critic_hidden{4, 4};
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  Eigen::VectorXd actor(static_cast<Eigen::Index>(param_count(arch)));
  for (auto& v : actor) v = 0.7 * normal(rng);
  GradcheckInstance inst{make_td3(arch, critic_hidden, Genome(actor), Td3Hyperparams{}, RegularizationMode::none(), rng),
                         {}, {}, {}};
  // Random biases too, so ReLU units are not all aligned at the origin.
  for (auto& v : inst.state.critic1) v = 0.7 * normal(rng);
  for (auto& v : inst.state.critic2) v = 0.7 * normal(rng);

  std::vector<Transition> ts(kBatch);
  for (auto& t : ts) {
    t.state = {normal(rng), normal(rng), normal(rng)};
    t.action = {unit(rng), unit(rng)};
    t.reward = normal(rng);
    t.next_state = {normal(rng), normal(rng), normal(rng)};
    t.done = unit(rng) > 0.5;
  }
  inst.batch = make_batch(ts);
  inst.targets = Eigen::VectorXd(kBatch);
  for (auto& v : inst.targets) v = normal(rng);
  Eigen::VectorXd center = actor;
  for (auto& v : center) v += normal(rng);
  inst.es_center = Genome(center);
  return inst;
}

Eigen::VectorXd numeric_critic_grad(const GradcheckInstance& inst, double h) {
  Td3State s = inst.state;
  const Eigen::Index n1 = s.critic1.size();
  const Eigen::Index n2 = s.critic2.size();
  Eigen::VectorXd grad(n1 + n2);
  auto loss = [&] { return critic_loss(s, inst.batch, inst.targets, nullptr, nullptr); };
  for (Eigen::Index i = 0; i < n1 + n2; ++i) {
    double& p = i < n1 ? s.critic1[i] : s.critic2[i - n1];
    const double saved = p;
    p = saved + h;
    const double up = loss();
    p = saved - h;
    const double down = loss();
    p = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

Eigen::VectorXd numeric_actor_grad(const GradcheckInstance& inst, RegularizationMode reg, double h) {
  Td3State s = inst.state;
  s.regularization = reg;
  Eigen::VectorXd grad(static_cast<Eigen::Index>(s.actor.size()));
  for (std::size_t i = 0; i < s.actor.size(); ++i) {
    const double saved = s.actor[i];
    s.actor[i] = saved + h;
    const double up = actor_loss(s, inst.batch, inst.es_center);
    s.actor[i] = saved - h;
    const double down = actor_loss(s, inst.batch, inst.es_center);
    s.actor[i] = saved;
    grad[static_cast<Eigen::Index>(i)] = (up - down) / (2.0 * h);
  }
  return grad;
}

GradcheckReport run_gradcheck(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eps_dist(0.01, 1.0);
  GradcheckReport report;
  report.instances = instances;
  for (int k = 0; k < instances; ++k) {
    GradcheckInstance inst = make_gradcheck_instance(rng);

    Eigen::VectorXd g1, g2;
    critic_loss(inst.state, inst.batch, inst.targets, &g1, &g2);
    Eigen::VectorXd analytic(g1.size() + g2.size());
    analytic << g1, g2;
    report.critic = std::max(report.critic, max_relative_error(analytic, numeric_critic_grad(inst)));

    const double eps = eps_dist(rng);
    const std::pair<RegularizationMode, double*> modes[] = {
        {RegularizationMode::none(), &report.actor_none},
        {RegularizationMode::l2(eps), &report.actor_l2},
        {RegularizationMode::squared_l2(eps), &report.actor_squared_l2}};
    for (const auto& [reg, slot] : modes) {
      Td3State s = inst.state;
      s.regularization = reg;
      Eigen::VectorXd grad;
      actor_loss_and_grad(s, inst.batch, inst.es_center, grad);
      *slot = std::max(*slot, max_relative_error(grad, numeric_actor_grad(inst, reg)));
    }
  }
  return report;
}

}  // namespace gdr
