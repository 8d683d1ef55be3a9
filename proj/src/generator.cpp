#include "geosched/generator.hpp"

#include <random>

namespace geosched {

Family parseFamily(const std::string& name) {
  if (name == "wflow") return Family::WeightedFlow;
  if (name == "flow2") return Family::FlowSquared;
  if (name == "tardiness") return Family::Tardiness;
  if (name == "mixed") return Family::Mixed;
  throw InvalidInput("unknown family '" + name + "' (expected wflow, flow2, tardiness or mixed)");
}

std::string familyName(Family family) {
  switch (family) {
    case Family::WeightedFlow: return "wflow";
    case Family::FlowSquared: return "flow2";
    case Family::Tardiness: return "tardiness";
    case Family::Mixed: return "mixed";
  }
  return "?";
}

void GeneratorConfig::validate() const {
  if (n < 1) throw InvalidInput("generator needs n >= 1");
  if (max_size < 1 || max_release < 1) throw InvalidInput("generator bounds must be >= 1");
  if (min_weight < 1 || max_weight < min_weight) throw InvalidInput("weight range must satisfy 1 <= min <= max");
  // Keeps every cost far below 2^53.
  if (n > 64 || max_size > 64 || max_release > 1024 || max_weight > (Cost{1} << 20))
    throw InvalidInput("generator bounds too large");
}

namespace {

// Draws without std::uniform_int_distribution so output does not depend on
// the standard library implementation.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

GspInstance generate(const GeneratorConfig& config) {
  config.validate();
  Draw draw(config.seed);
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < config.n; ++i) {
    Job job;
    job.id = "j" + std::to_string(i + 1);
    job.release = draw.between(1, config.max_release);
    job.size = draw.between(1, config.max_size);
    Family family = config.family;
    if (family == Family::Mixed) family = static_cast<Family>(draw.between(0, 2));
    switch (family) {
      case Family::WeightedFlow:
        job.weight = ConstantWeight{draw.between(config.min_weight, config.max_weight)};
        break;
      case Family::FlowSquared:
        job.weight = SquaredFlowWeight{};
        break;
      default: {
        const Time lo = config.allow_degenerate ? 1 : job.release;
        const Time d = draw.between(lo, job.release + job.size + config.max_size);
        job.weight = DeadlineWeight{d, draw.between(config.min_weight, config.max_weight)};
        break;
      }
    }
    jobs.push_back(std::move(job));
  }
  return GspInstance(std::move(jobs));
}

}  // namespace geosched
