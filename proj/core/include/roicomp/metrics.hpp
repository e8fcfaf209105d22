#ifndef ROICOMP_METRICS_HPP
#define ROICOMP_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "roicomp/image.hpp"

namespace roicomp {

/// Per-image evaluation record. psnr is empty when mse == 0 (lossless);
/// CSV output writes the literal token "lossless" for that case.
struct MetricsRecord {
    std::uint64_t n_o = 0;  // JPEG-LS stream bytes, original image
    std::uint64_t n_b = 0;  // JPEG-LS stream bytes, processed image
    double cr = 0.0;        // n_o / n_b
    double mse = 0.0;       // over ground-truth ROI pixels
    std::optional<double> psnr;
    std::uint64_t n_g = 0;  // ground-truth ROI pixel count
};

/// CR = N_O / N_B.
double compression_ratio(std::uint64_t n_o, std::uint64_t n_b);

/// Mean squared intensity error over the ground-truth ROI pixels.
double roi_mse(const GrayImage& original, const GrayImage& processed,
               const RoiMask& roi_gt);

/// 10*log10(max^2/mse); empty (lossless marker) when mse == 0.
std::optional<double> roi_psnr(double mse, int max_orig = 255);

/// One sweep sample before normalization.
struct SweepPoint {
    int gamma0 = 0;
    double cr = 0.0;
    std::optional<double> psnr;  // empty points are excluded from the curve
};

struct CurvePoint {
    int gamma0 = 0;
    double cr = 0.0;
    double psnr = 0.0;
    double cr_norm = 0.0;
    double psnr_norm = 0.0;
    double combined = 0.0;  // cr_norm + psnr_norm
};

struct TradeoffCurve {
    std::vector<CurvePoint> points;

    /// gamma0 of the point with the highest combined objective.
    int recommended_gamma0() const;
};

/// Min-max normalization per axis over the sweep; a constant series maps
/// to all zeros. Lossless-marker points are dropped first; at least two
/// finite points are required.
TradeoffCurve normalize_curve(std::span<const SweepPoint> points);

}  // namespace roicomp

#endif
