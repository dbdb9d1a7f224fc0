#include "dopt/bounds.hpp"
#include "dopt/edoa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dopt {

namespace {

/// Shared state and mechanics of the built-in algorithms: uniform
/// (re)initialization, the change-reaction steps every algorithm performs,
/// and the bookkeeping behind shift-severity estimation.
class EdoaBase : public Edoa {
 public:
  EdoaBase(const EdoaConfig& config, RandomStream stream)
      : config_(config),
        stream_(std::move(stream)),
        estimator_(config.shift_estimate_initial) {}

  const std::vector<SubPopulation>& subpopulations() const override {
    return subpops_;
  }
  std::vector<SubPopulation>& subpopulations() override { return subpops_; }
  const ShiftEstimator& shift_estimator() const override { return estimator_; }

 protected:
  EdoaConfig config_;
  RandomStream stream_;
  std::vector<SubPopulation> subpops_;
  ShiftEstimator estimator_;
  int next_id_ = 0;

  Individual fresh_member(Role role, ProblemView& problem) {
    const int d = problem.dimension();
    const Bounds b = problem.bounds();
    Individual m;
    m.role = role;
    m.position = stream_.uniform_vector(d, b.lo, b.hi);
    m.velocity = Vector::Zero(d);
    m.current_value = problem.evaluate(m.position);
    m.pbest_position = m.position;
    m.pbest_value = m.current_value;
    return m;
  }

  SubPopulation spawn_subpop(const std::vector<Role>& roles,
                             ProblemView& problem) {
    SubPopulation sp;
    sp.id = next_id_++;
    sp.members.reserve(roles.size());
    for (Role role : roles) sp.members.push_back(fresh_member(role, problem));
    seed_memories(sp);
    return sp;
  }

  /// Uniform restart in place: same members and roles, fresh positions,
  /// cleared memories. A reinitialized group starts a new relocation
  /// baseline for the shift estimator.
  void reinit_subpop(SubPopulation& sp, ProblemView& problem) {
    for (Individual& m : sp.members) {
      const Bounds b = problem.bounds();
      m.position = stream_.uniform_vector(problem.dimension(), b.lo, b.hi);
      m.velocity.setZero();
      m.current_value = problem.evaluate(m.position);
      m.pbest_position = m.position;
      m.pbest_value = m.current_value;
    }
    seed_memories(sp);
  }

  ReinitFn reinit_fn(ProblemView& problem) {
    return [this, &problem](SubPopulation& sp) { reinit_subpop(sp, problem); };
  }

  /// Cures outdated memory: observe gbest relocations, re-evaluate every
  /// stored position in the new environment, and rebase all personal bests
  /// on the members' current positions. The previous gbest stays the
  /// attractor unless a refreshed pbest beats its re-evaluated value.
  void common_change_reaction(ProblemView& problem) {
    for (SubPopulation& sp : subpops_) {
      if (sp.has_change_snapshot) {
        estimator_.add_observation(
            (sp.gbest_position - sp.last_change_gbest).norm());
      }
      sp.last_change_gbest = sp.gbest_position;
      sp.has_change_snapshot = true;
    }
    for (SubPopulation& sp : subpops_) {
      sp.gbest_value = problem.evaluate(sp.gbest_position);
      for (Individual& m : sp.members) {
        m.current_value = problem.evaluate(m.position);
        m.pbest_position = m.position;
        m.pbest_value = m.current_value;
      }
      sp.refresh_gbest();
    }
  }

 private:
  void seed_memories(SubPopulation& sp) {
    sp.gbest_value = -std::numeric_limits<double>::infinity();
    sp.refresh_gbest();
    sp.converged = false;
    sp.is_free = true;
    sp.last_change_gbest = sp.gbest_position;
    sp.has_change_snapshot = true;
  }
};

std::vector<Role> swarm_roles(int neutral, int quantum) {
  std::vector<Role> roles(static_cast<std::size_t>(neutral), Role::Neutral);
  roles.insert(roles.end(), static_cast<std::size_t>(quantum), Role::Quantum);
  return roles;
}

std::vector<Role> de_roles(int plain, int brownian) {
  std::vector<Role> roles(static_cast<std::size_t>(plain), Role::Plain);
  roles.insert(roles.end(), static_cast<std::size_t>(brownian),
               Role::Brownian);
  return roles;
}

/// Single constriction-PSO swarm; reacts to changes by re-randomizing a
/// fixed share of its particles.
class Rpso : public EdoaBase {
 public:
  Rpso(const EdoaConfig& config, RandomStream stream)
      : EdoaBase(config, std::move(stream)) {
    if (config_.swarm_size < 1) {
      throw std::invalid_argument("RPSO needs swarm_size >= 1");
    }
  }

  void init(ProblemView& problem) override {
    subpops_.push_back(
        spawn_subpop(swarm_roles(config_.swarm_size, 0), problem));
  }

  void iterate(ProblemView& problem) override {
    pso_step(subpops_.front(), config_.pso, problem.bounds(), stream_,
             problem);
  }

  void react_to_change(ProblemView& problem) override {
    common_change_reaction(problem);
    SubPopulation& sp = subpops_.front();
    const int restarts = static_cast<int>(
        std::lround(config_.restart_fraction *
                    static_cast<double>(sp.members.size())));
    // Re-randomize the weakest particles, keeping the strong half in place.
    std::vector<std::size_t> order(sp.members.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return sp.members[a].pbest_value <
                              sp.members[b].pbest_value;
                     });
    const Bounds b = problem.bounds();
    for (int i = 0; i < restarts; ++i) {
      Individual& m = sp.members[order[static_cast<std::size_t>(i)]];
      m.position = stream_.uniform_vector(problem.dimension(), b.lo, b.hi);
      m.velocity.setZero();
      m.current_value = problem.evaluate(m.position);
      m.pbest_position = m.position;
      m.pbest_value = m.current_value;
    }
    sp.refresh_gbest();
  }
};

/// Fixed set of swarms with quantum members, exclusion, and
/// anti-convergence.
class Mqso : public EdoaBase {
 public:
  Mqso(const EdoaConfig& config, RandomStream stream)
      : EdoaBase(config, std::move(stream)),
        cloud_radius_(config.shift_estimate_initial) {
    if (config_.subpop_count < 1 || config_.neutral_count < 1 ||
        config_.quantum_count < 0) {
      throw std::invalid_argument(
          "mQSO needs subpop_count >= 1, neutral_count >= 1, "
          "quantum_count >= 0");
    }
  }

  void init(ProblemView& problem) override {
    for (int i = 0; i < config_.subpop_count; ++i) {
      subpops_.push_back(spawn_subpop(
          swarm_roles(config_.neutral_count, config_.quantum_count), problem));
    }
  }

  void iterate(ProblemView& problem) override {
    for (SubPopulation& sp : subpops_) {
      pso_step(sp, config_.pso, problem.bounds(), stream_, problem);
      quantum_step(sp, cloud_radius_, problem.bounds(), stream_, problem);
    }
    const double radius = exclusion_radius(
        problem.bounds(), config_.subpop_count, problem.dimension());
    exclusion(subpops_, radius, reinit_fn(problem));
    for (SubPopulation& sp : subpops_) {
      sp.converged = is_converged(sp, radius);
    }
    anti_convergence(subpops_, radius, reinit_fn(problem));
  }

  void react_to_change(ProblemView& problem) override {
    common_change_reaction(problem);
    cloud_radius_ = estimator_.estimate();
  }

 private:
  double cloud_radius_;
};

/// Adaptive variant: starts with one swarm, spawns a fresh swarm when all
/// are converged, and trims surplus free swarms.
class Amqso : public EdoaBase {
 public:
  Amqso(const EdoaConfig& config, RandomStream stream)
      : EdoaBase(config, std::move(stream)),
        cloud_radius_(config.shift_estimate_initial) {
    if (config_.neutral_count < 1 || config_.quantum_count < 0 ||
        config_.max_free_swarms < 1) {
      throw std::invalid_argument(
          "AmQSO needs neutral_count >= 1, quantum_count >= 0, "
          "max_free_swarms >= 1");
    }
  }

  void init(ProblemView& problem) override {
    subpops_.push_back(spawn_subpop(
        swarm_roles(config_.neutral_count, config_.quantum_count), problem));
  }

  void iterate(ProblemView& problem) override {
    for (SubPopulation& sp : subpops_) {
      pso_step(sp, config_.pso, problem.bounds(), stream_, problem);
      quantum_step(sp, cloud_radius_, problem.bounds(), stream_, problem);
    }
    const double radius =
        exclusion_radius(problem.bounds(),
                         static_cast<int>(subpops_.size()),
                         problem.dimension());
    exclusion(subpops_, radius, reinit_fn(problem));

    int free_count = 0;
    for (SubPopulation& sp : subpops_) {
      sp.converged = is_converged(sp, radius);
      sp.is_free = !sp.converged;
      free_count += sp.is_free ? 1 : 0;
    }
    if (free_count == 0) {
      subpops_.push_back(spawn_subpop(
          swarm_roles(config_.neutral_count, config_.quantum_count), problem));
    } else if (free_count > config_.max_free_swarms) {
      remove_worst_free();
    }
  }

  void react_to_change(ProblemView& problem) override {
    common_change_reaction(problem);
    cloud_radius_ = estimator_.estimate();
  }

 private:
  void remove_worst_free() {
    std::size_t worst = subpops_.size();
    for (std::size_t i = 0; i < subpops_.size(); ++i) {
      if (!subpops_[i].is_free) continue;
      if (worst == subpops_.size() ||
          subpops_[i].gbest_value < subpops_[worst].gbest_value ||
          (subpops_[i].gbest_value == subpops_[worst].gbest_value &&
           subpops_[i].id > subpops_[worst].id)) {
        worst = i;
      }
    }
    if (worst < subpops_.size()) {
      subpops_.erase(subpops_.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }

  double cloud_radius_;
};

/// Fixed set of DE populations with brownian members and exclusion.
class Dynde : public EdoaBase {
 public:
  Dynde(const EdoaConfig& config, RandomStream stream)
      : EdoaBase(config, std::move(stream)) {
    if (config_.subpop_count < 1 || config_.de_count < 1 ||
        config_.brownian_count < 0) {
      throw std::invalid_argument(
          "DynDE needs subpop_count >= 1, de_count >= 1, "
          "brownian_count >= 0");
    }
    const int size = config_.de_count + config_.brownian_count;
    if (size < de_min_population(config_.de.strategy)) {
      throw std::invalid_argument(
          std::string("DynDE population of ") + std::to_string(size) +
          " is too small for " + to_string(config_.de.strategy));
    }
  }

  void init(ProblemView& problem) override {
    for (int i = 0; i < config_.subpop_count; ++i) {
      subpops_.push_back(spawn_subpop(
          de_roles(config_.de_count, config_.brownian_count), problem));
    }
  }

  void iterate(ProblemView& problem) override {
    for (SubPopulation& sp : subpops_) {
      de_step(sp, config_.de, problem.bounds(), stream_, problem);
      brownian_step(sp, config_.brownian_sigma, problem.bounds(), stream_,
                    problem);
    }
    const double radius = exclusion_radius(
        problem.bounds(), config_.subpop_count, problem.dimension());
    exclusion(subpops_, radius, reinit_fn(problem));
  }

  void react_to_change(ProblemView& problem) override {
    common_change_reaction(problem);
    // Fresh local diversity scaled to how far the peaks actually move.
    const double sigma = estimator_.estimate();
    const Bounds b = problem.bounds();
    for (SubPopulation& sp : subpops_) {
      for (Individual& m : sp.members) {
        if (m.role != Role::Brownian) continue;
        for (int j = 0; j < problem.dimension(); ++j) {
          m.position[j] = sp.gbest_position[j] + sigma * stream_.gaussian();
        }
        m.velocity.setZero();
        absorb_bounds(m.position, m.velocity, b);
        m.current_value = problem.evaluate(m.position);
        m.pbest_position = m.position;
        m.pbest_value = m.current_value;
      }
      sp.refresh_gbest();
    }
  }
};

}  // namespace

void register_builtin_edoas();

void register_builtin_edoas() {
  register_edoa("RPSO", [](const EdoaConfig& c, RandomStream s) {
    return std::make_unique<Rpso>(c, std::move(s));
  });
  register_edoa("mQSO", [](const EdoaConfig& c, RandomStream s) {
    return std::make_unique<Mqso>(c, std::move(s));
  });
  register_edoa("AmQSO", [](const EdoaConfig& c, RandomStream s) {
    return std::make_unique<Amqso>(c, std::move(s));
  });
  register_edoa("DynDE", [](const EdoaConfig& c, RandomStream s) {
    EdoaConfig config = c;
    if (!config.de_strategy_overridden) {
      config.de.strategy = DeStrategy::Best2Bin;  // DynDE convention
    }
    return std::make_unique<Dynde>(config, std::move(s));
  });
}

}  // namespace dopt
