#include "volcusum/segmentation.hpp"

#include <algorithm>
#include <string>

#include "volcusum/error.hpp"
#include "volcusum/qv.hpp"

namespace volcusum {

namespace {

struct Segmenter {
  const PricePanel& prices;
  const QVPanel& qv;
  const SegmentationConfig& config;
  std::vector<SegmentBreak> breaks;

  void run(std::size_t first, std::size_t count) {
    if (count < 2 * config.min_seg) return;
    const InferenceResult result =
        run_inference(qv.slice(first, count), config.test, streams::segment(first, count));
    if (!result.global.rejects(config.test.alpha)) return;

    std::size_t split = changepoint_day(result.pooled_theta, count);
    split = std::clamp(split, config.min_seg, count - config.min_seg);

    SegmentBreak brk;
    brk.day_index = first + split;
    brk.date = prices.days[first + split - 1];
    brk.p_value = result.global.p_value;
    brk.segment_first = first;
    brk.segment_days = count;
    breaks.push_back(brk);

    run(first, split);
    run(first + split, count - split);
  }
};

}  // namespace

SegmentationResult binary_segmentation(const PricePanel& prices,
                                       const SegmentationConfig& config) {
  config.test.validate();
  if (config.min_seg < 5) {
    throw Error(ErrorKind::Config, "min_seg must be at least 5 days");
  }
  prices.validate();

  SegmentationResult out;
  out.alpha = config.test.alpha;
  out.min_seg = config.min_seg;
  if (prices.num_days() < 2 * config.min_seg) {
    out.warnings.push_back("panel has " + std::to_string(prices.num_days()) +
                           " days, fewer than 2 * min_seg = " +
                           std::to_string(2 * config.min_seg) + "; nothing tested");
    return out;
  }

  const QVPanel qv = realized_qv(cidr_curves(prices));
  Segmenter segmenter{prices, qv, config, {}};
  segmenter.run(0, prices.num_days());
  out.breaks = std::move(segmenter.breaks);
  std::sort(out.breaks.begin(), out.breaks.end(),
            [](const SegmentBreak& a, const SegmentBreak& b) { return a.day_index < b.day_index; });
  return out;
}

}  // namespace volcusum
