#include "roicomp/segmentation.hpp"

#include <vector>

namespace roicomp {

RoiMask threshold_map(const ProbabilityMap& map, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("threshold_map: threshold must lie in [0,1]");
    RoiMask out(map.width(), map.height());
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x)
            out.set(x, y, map.value(x, y) >= threshold);
    return out;
}

RoiMask largest_component(const RoiMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;

    // Label components with an explicit-stack flood fill; seeds scan in
    // row-major order, so the first component to reach a given size wins
    // ties on the smallest-index rule.
    std::vector<int> label(n, -1);
    std::vector<std::size_t> stack;
    int best_label = -1;
    std::size_t best_size = 0;
    int next_label = 0;

    for (std::size_t seed = 0; seed < n; ++seed) {
        if (!mask.bits()[seed] || label[seed] != -1) continue;
        const int cur = next_label++;
        std::size_t size = 0;
        stack.clear();
        stack.push_back(seed);
        label[seed] = cur;
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            ++size;
            const int px = static_cast<int>(p % w);
            const int py = static_cast<int>(p / w);
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int qx = px + dx;
                    const int qy = py + dy;
                    if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                    const std::size_t q = static_cast<std::size_t>(qy) * w + qx;
                    if (mask.bits()[q] && label[q] == -1) {
                        label[q] = cur;
                        stack.push_back(q);
                    }
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_label = cur;
        }
    }

    RoiMask out(w, h);
    if (best_label < 0) return out;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.set(x, y, label[static_cast<std::size_t>(y) * w + x] == best_label);
    return out;
}

RoiMask segment(const ProbabilityMap& map, double threshold) {
    return largest_component(threshold_map(map, threshold));
}

}  // namespace roicomp
