#pragma once

#include "dopt/components.hpp"
#include "dopt/evaluation.hpp"
#include "dopt/random.hpp"

#include <memory>
#include <string>

namespace dopt {

/// Tunables shared by the built-in algorithms. Every field can be overridden
/// from the command line with --param; unknown keys are rejected.
struct EdoaConfig {
  // multi-population structure
  int subpop_count = 10;
  int neutral_count = 5;   // PSO members per swarm (mQSO, AmQSO)
  int quantum_count = 5;   // quantum members per swarm (mQSO, AmQSO)
  int de_count = 4;        // DE members per population (DynDE)
  int brownian_count = 2;  // brownian members per population (DynDE)
  // single-population structure
  int swarm_size = 50;            // RPSO
  double restart_fraction = 0.5;  // RPSO: share of particles re-randomized
  int max_free_swarms = 3;        // AmQSO: excess free swarms tolerated
  PsoParams pso{};
  DeParams de{};
  bool de_strategy_overridden = false;  // lets DynDE keep its own default
  double brownian_sigma = 0.2;
  double shift_estimate_initial = 1.0;

  /// Apply one KEY=VALUE override; throws std::invalid_argument on unknown
  /// keys or unparsable values. Hyphens and underscores are interchangeable.
  void apply_override(const std::string& key, const std::string& value);
};

/// The algorithm contract: one object per run, driven by the runner against
/// the problem view. Implementations keep all their state internal and see
/// the problem only through the view.
class Edoa {
 public:
  virtual ~Edoa() = default;

  virtual void init(ProblemView& problem) = 0;
  virtual void iterate(ProblemView& problem) = 0;
  virtual void react_to_change(ProblemView& problem) = 0;

  virtual const std::vector<SubPopulation>& subpopulations() const = 0;
  virtual std::vector<SubPopulation>& subpopulations() = 0;
  virtual const ShiftEstimator& shift_estimator() const = 0;
};

using EdoaFactory =
    std::function<std::unique_ptr<Edoa>(const EdoaConfig&, RandomStream)>;

/// Name registry (mirrors the plug-in convention: register a factory under
/// the algorithm's name and it becomes reachable from the CLI).
void register_edoa(const std::string& name, EdoaFactory factory);
bool edoa_registered(const std::string& name);
std::vector<std::string> edoa_names();
std::unique_ptr<Edoa> make_edoa(const std::string& name,
                                const EdoaConfig& config, RandomStream stream);

}  // namespace dopt
