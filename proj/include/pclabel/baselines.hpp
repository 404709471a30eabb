#pragma once

#include <cstdint>
#include <vector>

#include "pclabel/dataset.hpp"

namespace pclabel {

// Uniform sample of logical rows drawn without replacement. Reproducible from
// the seed: mt19937_64, modulo-bounded draws and Floyd's distinct-index
// sampling are all fully specified, so the same seed selects the same rows on
// every platform and release.
class SampleEstimator {
 public:
  SampleEstimator(std::vector<std::vector<std::int32_t>> columns,
                  std::int64_t dataset_size, std::uint64_t seed);

  std::int64_t sample_size() const { return sample_size_; }
  std::int64_t dataset_size() const { return dataset_size_; }
  std::uint64_t seed() const { return seed_; }

  // c_sample(p) * |D| / |S|
  double estimate(const Pattern& p) const;
  std::int64_t sample_count(const Pattern& p) const;

 private:
  std::vector<std::vector<std::int32_t>> columns_;  // sampled rows, column-major
  std::int64_t sample_size_ = 0;
  std::int64_t dataset_size_ = 0;
  std::uint64_t seed_ = 0;
};

SampleEstimator draw_sample(const Dataset& d, std::int64_t size, std::uint64_t seed);

// Sample size matching a label of bound x: x + |VC| value-count pairs.
std::int64_t sample_size_for_bound(const Dataset& d, std::int64_t bound);

// |D| scaled by the per-attribute value fractions of p; the S = {} label's
// estimate under a different name.
double independence_estimate(const ValueCounts& vc, std::int64_t dataset_size,
                             const Pattern& p);
double independence_estimate(const Dataset& d, const Pattern& p);

}  // namespace pclabel
