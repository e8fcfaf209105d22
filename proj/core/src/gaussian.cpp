#include "roicomp/gaussian.hpp"

#include <cmath>

namespace roicomp {

GaussianKernel gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_kernel: sigma must be positive");
    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.taps.resize(2 * k.radius + 1);
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k.taps[i + k.radius] = w;
        sum += w;
    }
    for (double& t : k.taps) t /= sum;
    return k;
}

GrayImage smooth(const GrayImage& image, double sigma) {
    const GaussianKernel k = gaussian_kernel(sigma);
    const int w = image.width();
    const int h = image.height();
    const int r = k.radius;

    // horizontal pass into a float buffer, then vertical pass
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* src = image.row(y);
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k.taps[d + r] * src[mirror_index(x + d, w)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k.taps[d + r] * tmp[static_cast<std::size_t>(mirror_index(y + d, h)) * w + x];
            const long v = std::lround(acc);
            out.at(x, y) = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
    }
    return out;
}

GrayImage restore_roi(const GrayImage& filtered, const GrayImage& original,
                      const RoiMask& mask) {
    if (filtered.width() != original.width() || filtered.height() != original.height() ||
        mask.width() != original.width() || mask.height() != original.height())
        throw std::invalid_argument("restore_roi: operand dimensions differ");
    GrayImage out = filtered;
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            if (mask.get(x, y)) out.at(x, y) = original.at(x, y);
    return out;
}

}  // namespace roicomp
