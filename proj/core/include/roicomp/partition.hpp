#ifndef ROICOMP_PARTITION_HPP
#define ROICOMP_PARTITION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "roicomp/image.hpp"

namespace roicomp {

enum class BlockClass : std::uint8_t { roi, nroi };

/// One leaf of the hierarchical partition: an 8x8 NROI block, or a 4x4
/// quadrant of a split ROI block.
struct BlockDescriptor {
    int x = 0;
    int y = 0;
    int size = 0;  // 8 or 4
    BlockClass cls = BlockClass::nroi;
    int edge_count = 0;  // N_Edge for this footprint; filled by the pipeline
};

/// Leaves cover every full 8x8 block exactly once; pixels of partial blocks
/// at the right/bottom margins stay outside the plan and are never touched.
struct PartitionPlan {
    int width = 0;
    int height = 0;
    std::vector<BlockDescriptor> leaves;
};

/// ROI if any mask bit in the footprint is true, else NROI.
BlockClass classify_footprint(const RoiMask& mask, int x0, int y0, int size);

/// Two-level partition: NROI 8x8 blocks stay whole; ROI 8x8 blocks split
/// into four independently classified 4x4 quadrants.
PartitionPlan partition(int width, int height, const RoiMask& mask);

/// CSV dump (x,y,size,class,edge_count per leaf) for inspection.
std::string plan_to_csv(const PartitionPlan& plan);

}  // namespace roicomp

#endif
