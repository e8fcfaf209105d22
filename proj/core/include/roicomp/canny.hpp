#ifndef ROICOMP_CANNY_HPP
#define ROICOMP_CANNY_HPP

#include "roicomp/image.hpp"

namespace roicomp {

/// Canny edge detection: Gaussian pre-smoothing, 3x3 Sobel gradients,
/// four-direction non-maximum suppression, double-threshold hysteresis.
/// high and low are fractions of the maximum gradient magnitude in the
/// image, 0 < low <= high <= 1. Borders are mirrored.
EdgeMap canny(const GrayImage& image, double high, double low, double sigma_pre = 1.4);

/// Edge pixels inside the size x size footprint at (x0,y0).
int count_edges_in_block(const EdgeMap& edges, int x0, int y0, int size);

}  // namespace roicomp

#endif
