#ifndef ROICOMP_SEGMENTATION_HPP
#define ROICOMP_SEGMENTATION_HPP

#include "roicomp/image.hpp"

namespace roicomp {

/// bit(x,y) = probability(x,y) >= threshold. No connectivity processing.
RoiMask threshold_map(const ProbabilityMap& map, double threshold);

/// Keeps exactly the largest 8-connected true component; empty in, empty out.
/// Size ties go to the component containing the smallest row-major index.
RoiMask largest_component(const RoiMask& mask);

/// largest_component(threshold_map(map, threshold))
RoiMask segment(const ProbabilityMap& map, double threshold);

}  // namespace roicomp

#endif
