#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "volcusum/inference.hpp"
#include "volcusum/panel.hpp"

namespace volcusum {

struct SegmentationConfig {
  TestConfig test;          // test.alpha is the per-segment significance level
  std::size_t min_seg = 30;  // minimum number of days between breaks
};

struct SegmentBreak {
  std::size_t day_index = 0;  // 1-based index of the last pre-change day
  std::string date;           // its identifier
  double p_value = 1.0;       // global p-value of the segment that produced it
  std::size_t segment_first = 0;  // 0-based bounds of that segment
  std::size_t segment_days = 0;
};

struct SegmentationResult {
  std::vector<SegmentBreak> breaks;  // increasing day_index
  double alpha = 0.05;
  std::size_t min_seg = 30;
  std::vector<std::string> warnings;
};

/// Binary segmentation with the combined test: a segment whose global p-value
/// is at most alpha is split at the pooled change point estimate and both
/// halves are examined again. Segments shorter than 2 * min_seg are not
/// tested; split points are kept at least min_seg days from either segment end.
/// Each segment draws its limit samples from a stream keyed by its bounds, so
/// the result does not depend on traversal order.
SegmentationResult binary_segmentation(const PricePanel& prices,
                                       const SegmentationConfig& config);

}  // namespace volcusum
