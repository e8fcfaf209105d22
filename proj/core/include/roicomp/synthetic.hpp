#ifndef ROICOMP_SYNTHETIC_HPP
#define ROICOMP_SYNTHETIC_HPP

#include <cstdint>

#include "roicomp/image.hpp"

namespace roicomp {

/// One generated test subject: the raster, the vessel probability map a
/// segmentation network would produce, and the exact vessel ground truth.
struct SyntheticSample {
    GrayImage image;
    ProbabilityMap prob;
    RoiMask ground_truth;
};

/// Deterministic synthetic angiogram: smooth low-frequency background with
/// mild noise, plus a dark branching vessel tree drawn by seeded random
/// walks. The probability map is the blurred ground truth attenuated with
/// distance from the tree root, so thresholding recovers a connected
/// approximation that deliberately misses outer vessel stretches.
SyntheticSample generate_synthetic_angiogram(std::uint64_t seed, int width, int height);

}  // namespace roicomp

#endif
