#ifndef ROICOMP_GAUSSIAN_HPP
#define ROICOMP_GAUSSIAN_HPP

#include <vector>

#include "roicomp/image.hpp"

namespace roicomp {

/// Separable sampled Gaussian, radius ceil(3*sigma), unit sum.
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> taps;  // 2*radius+1 one-dimensional taps, sum 1

    /// Full 2-D weight at offset (dx,dy), |dx|,|dy| <= radius.
    double weight(int dx, int dy) const {
        return taps[dx + radius] * taps[dy + radius];
    }
};

GaussianKernel gaussian_kernel(double sigma);

/// Convolution with gaussian_kernel(sigma), mirrored borders, rounded to
/// nearest integer and clamped to [0,255]. A constant image is unchanged.
GrayImage smooth(const GrayImage& image, double sigma);

/// output = original where mask is true, filtered elsewhere.
GrayImage restore_roi(const GrayImage& filtered, const GrayImage& original,
                      const RoiMask& mask);

/// Mirror index into [0,n): reflection repeats the edge sample.
inline int mirror_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

}  // namespace roicomp

#endif
