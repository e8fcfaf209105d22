#include "roicomp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "roicomp/gaussian.hpp"

namespace roicomp {

namespace {

// Thin deterministic layer over mt19937_64; avoids std distributions whose
// exact output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed ^ 0x9E3779B97F4A7C15ULL) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int range(int lo, int hi) {
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

struct Branch {
    double x, y;
    double angle;
    double thickness;
    int steps;
    bool detected;  // whether the simulated segmenter sees this branch
};

std::size_t stamp_disk(BitMask& mask, double cx, double cy, double r) {
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    const int x1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(cx + r)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(cy + r)));
    std::size_t painted = 0;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            if (dx * dx + dy * dy <= r * r && !mask.get(x, y)) {
                mask.set(x, y, true);
                ++painted;
            }
        }
    return painted;
}

std::vector<double> blur_field(const std::vector<double>& in, int w, int h, double sigma) {
    const GaussianKernel k = gaussian_kernel(sigma);
    const int r = k.radius;
    std::vector<double> tmp(in.size()), out(in.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k.taps[d + r] * in[static_cast<std::size_t>(y) * w + mirror_index(x + d, w)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k.taps[d + r] * tmp[static_cast<std::size_t>(mirror_index(y + d, h)) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    return out;
}

}  // namespace

SyntheticSample generate_synthetic_angiogram(std::uint64_t seed, int width, int height) {
    if (width < 64 || height < 64)
        throw std::invalid_argument("generate_synthetic_angiogram: dimensions must be >= 64");

    Rng rng(seed);
    const std::size_t n = static_cast<std::size_t>(width) * height;

    // --- vessel tree: branching random walk, regrown until it is large
    // enough (a walk can leave the frame early on unlucky draws). The
    // simulated segmenter misses some sub-branches entirely: they are drawn
    // in the image and the ground truth but not in the probability map.
    const std::size_t pixel_budget = n / 9;   // vessel fraction stays under 15%
    const std::size_t min_pixels = n / 64;    // and above ~1.5%
    RoiMask gt(width, height);
    RoiMask detected(width, height);
    double root_x = 0.0, root_y = 0.0;
    std::size_t painted = 0;

    for (int attempt = 0; attempt < 8 && painted < min_pixels; ++attempt) {
        RoiMask tree(width, height);
        RoiMask tree_detected(width, height);
        const double rx = width * rng.uniform(0.30, 0.70);
        const double ry = height * rng.uniform(0.15, 0.35);
        const int walk_steps = std::max(600, static_cast<int>(1.7 * std::max(width, height)));

        std::vector<Branch> queue;
        queue.push_back({rx, ry, rng.uniform(0.25 * std::numbers::pi, 0.75 * std::numbers::pi),
                         rng.uniform(2.6, 3.4), walk_steps, true});
        int branches_spawned = 0;
        const int max_branches = 28;
        std::size_t tree_painted = 0;

        while (!queue.empty() && tree_painted < pixel_budget) {
            Branch b = queue.back();
            queue.pop_back();
            while (b.steps-- > 0 && b.thickness >= 0.9 && tree_painted < pixel_budget) {
                tree_painted += stamp_disk(tree, b.x, b.y, b.thickness);
                if (b.detected) stamp_disk(tree_detected, b.x, b.y, b.thickness);
                b.x += 0.7 * std::cos(b.angle);
                b.y += 0.7 * std::sin(b.angle);
                if (b.x < 3 || b.x > width - 4 || b.y < 3 || b.y > height - 4) break;
                b.angle += rng.uniform(-0.22, 0.22);
                b.thickness *= 0.9988;
                if (branches_spawned < max_branches && rng.uniform() < 0.012 &&
                    b.thickness > 1.2) {
                    ++branches_spawned;
                    const double split = rng.uniform(0.35, 0.85) * (rng.range(0, 1) ? 1 : -1);
                    // every third branch eludes the segmenter; children of a
                    // missed branch stay missed
                    const bool child_detected =
                        b.detected && (branches_spawned % 3 != 0);
                    queue.push_back({b.x, b.y, b.angle + split, b.thickness * 0.78,
                                     b.steps, child_detected});
                    b.angle -= 0.25 * split;
                }
            }
        }
        if (tree_painted > painted) {
            painted = tree_painted;
            gt = std::move(tree);
            detected = std::move(tree_detected);
            root_x = rx;
            root_y = ry;
        }
    }

    // --- background: low-frequency waves + vignette ---
    std::vector<double> bg(n);
    const double base = rng.uniform(150.0, 185.0);
    const double a1 = rng.uniform(8.0, 16.0), f1 = rng.uniform(1.0, 2.2), p1 = rng.uniform(0, 2 * std::numbers::pi);
    const double a2 = rng.uniform(6.0, 12.0), f2 = rng.uniform(1.2, 2.8), p2 = rng.uniform(0, 2 * std::numbers::pi);
    const double vignette = rng.uniform(18.0, 30.0);
    const double cx = width / 2.0, cy = height / 2.0;
    const double r_norm = std::hypot(cx, cy);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / width;
            const double v = static_cast<double>(y) / height;
            const double r = std::hypot(x - cx, y - cy) / r_norm;
            bg[static_cast<std::size_t>(y) * width + x] =
                base + a1 * std::cos(2 * std::numbers::pi * f1 * u + p1) +
                a2 * std::cos(2 * std::numbers::pi * f2 * v + p2) - vignette * r * r;
        }

    // --- vessel shading: soft-edged darkening from the blurred mask ---
    std::vector<double> vessel(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vessel[i] = gt.bits()[i] ? 1.0 : 0.0;
    const std::vector<double> vessel_soft = blur_field(vessel, width, height, 0.9);
    const double contrast = rng.uniform(62.0, 82.0);

    GrayImage image(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            const double noise = rng.uniform(-4.0, 4.0) + rng.uniform(-4.0, 4.0);
            const double val = bg[i] - contrast * std::min(1.0, 1.35 * vessel_soft[i]) + noise;
            const long q = std::lround(val);
            image.at(x, y) = static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
        }

    // --- probability map: blurred detected vessels, faded away from the
    // root so the farthest stretches also drop below a 0.5 threshold ---
    std::vector<double> vessel_det(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vessel_det[i] = detected.bits()[i] ? 1.0 : 0.0;
    const std::vector<double> prob_soft = blur_field(vessel_det, width, height, 1.1);

    double d_max = 1.0;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (gt.get(x, y))
                d_max = std::max(d_max, std::hypot(x - root_x, y - root_y));

    std::vector<std::uint8_t> prob_raw(n);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            const double dist = std::hypot(x - root_x, y - root_y);
            const double atten = 1.0 - 0.45 * std::min(1.0, dist / d_max);
            const double p = std::min(1.0, 1.8 * prob_soft[i]) * atten;
            prob_raw[i] = static_cast<std::uint8_t>(std::lround(255.0 * p));
        }

    return SyntheticSample{std::move(image),
                           ProbabilityMap(width, height, std::move(prob_raw)),
                           std::move(gt)};
}

}  // namespace roicomp
