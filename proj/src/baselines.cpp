#include "pclabel/baselines.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "pclabel/error.hpp"
#include "pclabel/kernels.hpp"

namespace pclabel {

SampleEstimator::SampleEstimator(std::vector<std::vector<std::int32_t>> columns,
                                 std::int64_t dataset_size, std::uint64_t seed)
    : columns_(std::move(columns)), dataset_size_(dataset_size), seed_(seed) {
  sample_size_ = columns_.empty()
                     ? 0
                     : static_cast<std::int64_t>(columns_.front().size());
  if (sample_size_ < 1 || sample_size_ > dataset_size_) {
    throw ValidationError("sample size must lie in [1, |D|]");
  }
}

std::int64_t SampleEstimator::sample_count(const Pattern& p) const {
  const auto& backend = kernels::active_backend();
  const std::size_t n = static_cast<std::size_t>(sample_size_);
  std::vector<std::uint8_t> mask(n, 1);
  for (const auto& b : p.bindings()) {
    backend.eq_mask_and(columns_[static_cast<std::size_t>(b.attr)].data(), n,
                        b.value, mask.data());
  }
  std::int64_t count = 0;
  for (std::uint8_t m : mask) count += m;
  return count;
}

double SampleEstimator::estimate(const Pattern& p) const {
  return static_cast<double>(sample_count(p)) *
         static_cast<double>(dataset_size_) / static_cast<double>(sample_size_);
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

}  // namespace

SampleEstimator draw_sample(const Dataset& d, std::int64_t size, std::uint64_t seed) {
  if (size < 1) throw ValidationError("sample size must be positive");
  if (size > d.size()) {
    throw ValidationError("sample size " + std::to_string(size) +
                          " exceeds dataset size " + std::to_string(d.size()));
  }
  const auto total = static_cast<std::uint64_t>(d.size());
  const auto k = static_cast<std::uint64_t>(size);

  // Floyd's algorithm: k distinct logical row indices out of [0, |D|).
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k) * 2);
  for (std::uint64_t j = total - k; j < total; ++j) {
    const std::uint64_t t = bounded(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());

  // Logical index -> physical row via cumulative weights.
  const auto& weights = d.weights();
  std::vector<std::vector<std::int32_t>> columns(
      static_cast<std::size_t>(d.attribute_count()));
  for (auto& col : columns) col.reserve(indices.size());
  std::size_t row = 0;
  std::uint64_t row_end = static_cast<std::uint64_t>(weights[0]);
  for (const std::uint64_t logical : indices) {
    while (logical >= row_end) {
      ++row;
      row_end += static_cast<std::uint64_t>(weights[row]);
    }
    for (int a = 0; a < d.attribute_count(); ++a) {
      columns[static_cast<std::size_t>(a)].push_back(d.column(a)[row]);
    }
  }
  return SampleEstimator(std::move(columns), d.size(), seed);
}

std::int64_t sample_size_for_bound(const Dataset& d, std::int64_t bound) {
  std::int64_t vc_pairs = 0;
  for (const auto& a : d.schema()) {
    vc_pairs += static_cast<std::int64_t>(a.domain.size());
  }
  return bound + vc_pairs;
}

double independence_estimate(const ValueCounts& vc, std::int64_t dataset_size,
                             const Pattern& p) {
  double est = static_cast<double>(dataset_size);
  for (const auto& b : p.bindings()) {
    est *= static_cast<double>(vc.count(b.attr, b.value)) /
           static_cast<double>(vc.total(b.attr));
  }
  return est;
}

double independence_estimate(const Dataset& d, const Pattern& p) {
  validate_pattern(p, d.schema());
  return independence_estimate(value_counts(d), d.size(), p);
}

}  // namespace pclabel
