#ifndef ROICOMP_SWEEP_HPP
#define ROICOMP_SWEEP_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roicomp/metrics.hpp"
#include "roicomp/pipeline.hpp"

namespace roicomp {

/// One corpus subject: image, probability map, and the ground-truth mask
/// used for PSNR (which may differ from the predicted ROI).
struct CorpusItem {
    std::string id;
    GrayImage image;
    ProbabilityMap prob;
    RoiMask gt;
};

struct SweepOptions {
    std::vector<int> gamma0_values;
    CompressionParams base;                  // gamma0/use_edges overridden per point
    std::vector<bool> edge_variants = {true};
    int workers = 1;
};

/// One CSV row: one (image, configuration) pair. The normalized columns
/// repeat the corpus-level curve values of the row's configuration.
struct SweepRow {
    std::string image_id;
    int gamma0 = 0;
    double sigma = 0.0;
    bool edges_enabled = true;
    std::uint64_t n_o = 0;
    std::uint64_t n_b = 0;
    double cr = 0.0;
    double mse = 0.0;
    std::optional<double> psnr;
    std::optional<double> cr_norm;  // empty when the config left the curve
    std::optional<double> psnr_norm;
    std::optional<double> combined;
};

struct VariantResult {
    bool edges_enabled = true;
    TradeoffCurve curve;  // over corpus-averaged CR and PSNR
    int recommended_gamma0 = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<VariantResult> variants;
};

/// Runs the full (variant, gamma0, image) grid. Results are byte-identical
/// for any worker count.
SweepResult sweep(std::span<const CorpusItem> corpus, const SweepOptions& options);

/// CSV with header image_id,gamma0,sigma,edges_enabled,n_o,n_b,cr,mse,
/// psnr,cr_norm,psnr_norm,combined. Lossless PSNR prints as "lossless".
std::string to_csv(const SweepResult& result);

}  // namespace roicomp

#endif
