#ifndef ROICOMP_PIPELINE_HPP
#define ROICOMP_PIPELINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "roicomp/dct.hpp"
#include "roicomp/image.hpp"
#include "roicomp/jpegls.hpp"
#include "roicomp/metrics.hpp"
#include "roicomp/partition.hpp"

namespace roicomp {

/// Every tunable of the compression pipeline.
struct CompressionParams {
    int gamma0 = 16;               // kept-coefficient base budget
    double sigma = 1.0;            // deblocking Gaussian; <= 0 disables smoothing
    double canny_high = 0.15;      // fraction of max gradient magnitude
    double canny_low_ratio = 0.4;  // low = ratio * high
    double canny_sigma = 1.4;      // pre-smoothing scale of the detector
    double prob_threshold = 0.5;   // probability cutoff for segmentation
    bool use_edges = true;         // include N_Edge in the budget
    bool truncate_4x4 = false;     // also truncate NROI 4x4 sub-blocks
    Eq1Interpretation eq1 = Eq1Interpretation::min_cap;
    JpeglsParams jpegls{};

    void validate() const;
};

/// Leaf counts by size and class.
struct PartitionSummary {
    int nroi8 = 0;
    int roi4 = 0;
    int nroi4 = 0;
};

struct PipelineResult {
    std::vector<std::uint8_t> stream;  // complete JPEG-LS interchange stream
    GrayImage processed;               // pre-coding image; decode(stream) == processed
    RoiMask predicted_roi;             // segmentation output driving the pipeline
    EdgeMap edges;                     // empty map when use_edges is off
    PartitionPlan plan;                // leaves annotated with edge counts
    PartitionSummary summary;
    MetricsRecord metrics;  // n_o/n_b/cr; mse/psnr against the predicted ROI
};

/// Full pipeline: segment, detect edges over the whole image, partition,
/// truncate NROI leaves in the DCT domain, tile, smooth, restore ROI
/// pixels, entropy-code. ROI leaves and margin pixels pass through.
PipelineResult compress(const GrayImage& image, const ProbabilityMap& prob,
                        const CompressionParams& params);

/// Inverse of the final coding stage.
GrayImage decompress(std::span<const std::uint8_t> stream);

}  // namespace roicomp

#endif
