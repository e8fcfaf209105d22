#include "roicomp/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace roicomp {

double compression_ratio(std::uint64_t n_o, std::uint64_t n_b) {
    if (n_b == 0)
        throw std::invalid_argument("compression_ratio: processed size is zero");
    return static_cast<double>(n_o) / static_cast<double>(n_b);
}

double roi_mse(const GrayImage& original, const GrayImage& processed,
               const RoiMask& roi_gt) {
    if (original.width() != processed.width() || original.height() != processed.height() ||
        roi_gt.width() != original.width() || roi_gt.height() != original.height())
        throw std::invalid_argument("roi_mse: operand dimensions differ");
    std::uint64_t n_g = 0;
    double sum = 0.0;
    for (int y = 0; y < original.height(); ++y)
        for (int x = 0; x < original.width(); ++x) {
            if (!roi_gt.get(x, y)) continue;
            ++n_g;
            const double d = static_cast<double>(original.at(x, y)) - processed.at(x, y);
            sum += d * d;
        }
    if (n_g == 0)
        throw std::invalid_argument("roi_mse: ground-truth mask is empty");
    return sum / static_cast<double>(n_g);
}

std::optional<double> roi_psnr(double mse, int max_orig) {
    if (mse < 0.0)
        throw std::invalid_argument("roi_psnr: mse cannot be negative");
    if (mse == 0.0) return std::nullopt;
    const double peak = static_cast<double>(max_orig);
    return 10.0 * std::log10(peak * peak / mse);
}

int TradeoffCurve::recommended_gamma0() const {
    int best = points.empty() ? 0 : points.front().gamma0;
    double best_combined = points.empty() ? 0.0 : points.front().combined;
    for (const CurvePoint& p : points)
        if (p.combined > best_combined) {
            best_combined = p.combined;
            best = p.gamma0;
        }
    return best;
}

TradeoffCurve normalize_curve(std::span<const SweepPoint> points) {
    std::vector<CurvePoint> finite;
    for (const SweepPoint& p : points)
        if (p.psnr.has_value())
            finite.push_back({p.gamma0, p.cr, *p.psnr, 0.0, 0.0, 0.0});
    if (finite.size() < 2)
        throw std::invalid_argument("normalize_curve: need at least 2 finite points");

    const auto [cr_min_it, cr_max_it] = std::minmax_element(
        finite.begin(), finite.end(),
        [](const CurvePoint& a, const CurvePoint& b) { return a.cr < b.cr; });
    const auto [ps_min_it, ps_max_it] = std::minmax_element(
        finite.begin(), finite.end(),
        [](const CurvePoint& a, const CurvePoint& b) { return a.psnr < b.psnr; });

    const double cr_span = cr_max_it->cr - cr_min_it->cr;
    const double ps_span = ps_max_it->psnr - ps_min_it->psnr;
    const double cr_min = cr_min_it->cr;
    const double ps_min = ps_min_it->psnr;

    for (CurvePoint& p : finite) {
        p.cr_norm = cr_span > 0.0 ? (p.cr - cr_min) / cr_span : 0.0;
        p.psnr_norm = ps_span > 0.0 ? (p.psnr - ps_min) / ps_span : 0.0;
        p.combined = p.cr_norm + p.psnr_norm;
    }
    return TradeoffCurve{std::move(finite)};
}

}  // namespace roicomp
