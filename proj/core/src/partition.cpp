#include "roicomp/partition.hpp"

#include <cstdio>

namespace roicomp {

BlockClass classify_footprint(const RoiMask& mask, int x0, int y0, int size) {
    if (x0 < 0 || y0 < 0 || size < 1 || x0 + size > mask.width() ||
        y0 + size > mask.height())
        throw std::invalid_argument("classify_footprint: footprint out of bounds");
    for (int y = y0; y < y0 + size; ++y)
        for (int x = x0; x < x0 + size; ++x)
            if (mask.get(x, y)) return BlockClass::roi;
    return BlockClass::nroi;
}

PartitionPlan partition(int width, int height, const RoiMask& mask) {
    if (mask.width() != width || mask.height() != height)
        throw std::invalid_argument("partition: mask dimensions differ from image");
    PartitionPlan plan{width, height, {}};
    const int bw = width / 8;
    const int bh = height / 8;
    plan.leaves.reserve(static_cast<std::size_t>(bw) * bh);
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            const int x0 = bx * 8;
            const int y0 = by * 8;
            if (classify_footprint(mask, x0, y0, 8) == BlockClass::nroi) {
                plan.leaves.push_back({x0, y0, 8, BlockClass::nroi, 0});
                continue;
            }
            for (int qy = 0; qy < 2; ++qy)
                for (int qx = 0; qx < 2; ++qx) {
                    const int sx = x0 + qx * 4;
                    const int sy = y0 + qy * 4;
                    plan.leaves.push_back(
                        {sx, sy, 4, classify_footprint(mask, sx, sy, 4), 0});
                }
        }
    }
    return plan;
}

std::string plan_to_csv(const PartitionPlan& plan) {
    std::string out = "x,y,size,class,edge_count\n";
    char line[80];
    for (const BlockDescriptor& leaf : plan.leaves) {
        std::snprintf(line, sizeof(line), "%d,%d,%d,%s,%d\n", leaf.x, leaf.y, leaf.size,
                      leaf.cls == BlockClass::roi ? "roi" : "nroi", leaf.edge_count);
        out += line;
    }
    return out;
}

}  // namespace roicomp
