#include "ndstore/generator.hpp"

#include <stdexcept>

namespace nds {

InstanceGenerator::InstanceGenerator(GeneratorConfig cfg)
    : cfg_(cfg), rng_(cfg.seed) {}

std::vector<ParetoElement> InstanceGenerator::next_batch() {
  if (done()) throw std::logic_error("InstanceGenerator exhausted");

  std::uniform_int_distribution<int> pick(1, 6);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> u010(0.0, 10.0);

  int i = pick(rng_);
  double r = u010(rng_);
  std::vector<double> xs, ys;
  xs.reserve(static_cast<size_t>(i));
  ys.reserve(static_cast<size_t>(i));
  for (int j = 0; j < i; ++j) {
    if (j > 0) r += u01(rng_);
    double dy = 10.5 - r;
    ys.push_back(dy * dy / 5.0 - k_);
    xs.push_back(r + (5.0 - k_));
  }

  std::vector<ParetoElement> out;
  if (i == 1) {
    out.push_back(ParetoElement::point(xs[0], ys[0]));
  } else {
    // r is increasing, so the chain is already sorted by x; pre_trim guards
    // against the rare non-decreasing tail of the parabola (r > 10.5)
    for (int j = 0; j + 1 < i; ++j)
      out.push_back(pre_trim(xs[j], ys[j], xs[j + 1], ys[j + 1]));
  }

  int64_t room = cfg_.n_total - emitted_;
  if (static_cast<int64_t>(out.size()) > room) out.resize(static_cast<size_t>(room));
  emitted_ += static_cast<int64_t>(out.size());
  if (cfg_.n_total > 0) k_ += cfg_.mu / static_cast<double>(cfg_.n_total);
  return out;
}

}  // namespace nds
