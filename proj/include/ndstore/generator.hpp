// Randomized instance stream for the storage experiment: batches of points or
// short piecewise-linear chains sampled from a parabola that sinks by mu/N
// per batch (mu = 0 keeps everything mutually nondominated).
#ifndef NDSTORE_GENERATOR_HPP
#define NDSTORE_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ndstore/geometry.hpp"

namespace nds {

struct GeneratorConfig {
  int64_t n_total = 0;  // total number of elements to emit
  double mu = 0.0;
  uint64_t seed = 0;
};

class InstanceGenerator {
 public:
  explicit InstanceGenerator(GeneratorConfig cfg);

  bool done() const { return emitted_ >= cfg_.n_total; }
  int64_t emitted() const { return emitted_; }

  // One batch: a single point or up to five chained segments, truncated so
  // the stream never exceeds n_total elements. Throws std::logic_error when
  // called after exhaustion.
  std::vector<ParetoElement> next_batch();

 private:
  GeneratorConfig cfg_;
  double k_ = 1.0;
  int64_t emitted_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace nds

#endif
