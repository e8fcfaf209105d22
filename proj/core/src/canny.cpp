#include "roicomp/canny.hpp"

#include <cmath>
#include <vector>

#include "roicomp/gaussian.hpp"

namespace roicomp {

namespace {

// Float-valued Gaussian smoothing; Canny thresholds are too sensitive to
// round intermediates to 8 bits.
std::vector<double> smooth_real(const GrayImage& image, double sigma) {
    const GaussianKernel k = gaussian_kernel(sigma);
    const int w = image.width();
    const int h = image.height();
    const int r = k.radius;
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);
    std::vector<double> out(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d)
                acc += k.taps[d + r] * image.row(y)[mirror_index(x + d, w)];
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

constexpr double kPi = 3.14159265358979323846;

}  // namespace

EdgeMap canny(const GrayImage& image, double high, double low, double sigma_pre) {
    if (!(low > 0.0) || low > high || high > 1.0)
        throw std::invalid_argument("canny: need 0 < low <= high <= 1");
    if (!(sigma_pre > 0.0))
        throw std::invalid_argument("canny: sigma_pre must be positive");

    const int w = image.width();
    const int h = image.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const std::vector<double> sm = smooth_real(image, sigma_pre);

    auto at = [&](int x, int y) -> double {
        return sm[static_cast<std::size_t>(mirror_index(y, h)) * w + mirror_index(x, w)];
    };

    // 3x3 Sobel, mirrored borders
    std::vector<double> mag(n);
    std::vector<std::uint8_t> dir(n);  // quantized direction bin 0..3
    double max_mag = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = -at(x - 1, y - 1) + at(x + 1, y - 1)
                              - 2 * at(x - 1, y) + 2 * at(x + 1, y)
                              - at(x - 1, y + 1) + at(x + 1, y + 1);
            const double gy = -at(x - 1, y - 1) - 2 * at(x, y - 1) - at(x + 1, y - 1)
                              + at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1);
            const double m = std::hypot(gx, gy);
            mag[static_cast<std::size_t>(y) * w + x] = m;
            if (m > max_mag) max_mag = m;
            double theta = std::atan2(gy, gx);
            if (theta < 0) theta += kPi;
            std::uint8_t bin;
            if (theta < kPi / 8 || theta >= 7 * kPi / 8)
                bin = 0;  // gradient ~horizontal
            else if (theta < 3 * kPi / 8)
                bin = 1;  // ~45 degrees
            else if (theta < 5 * kPi / 8)
                bin = 2;  // ~vertical
            else
                bin = 3;  // ~135 degrees
            dir[static_cast<std::size_t>(y) * w + x] = bin;
        }
    }

    EdgeMap edges(w, h);
    if (max_mag <= 0.0) return edges;  // constant image

    const double th = high * max_mag;
    const double tl = low * max_mag;

    // Offsets along the gradient for each direction bin.
    static constexpr int off_x[4] = {1, 1, 0, 1};
    static constexpr int off_y[4] = {0, 1, 1, -1};

    auto mag_at = [&](int x, int y) -> double {
        return mag[static_cast<std::size_t>(mirror_index(y, h)) * w + mirror_index(x, w)];
    };

    // Non-maximum suppression; the negative-offset comparison is strict so
    // a two-pixel ridge plateau keeps exactly one pixel.
    std::vector<std::uint8_t> state(n, 0);  // 0 suppressed, 1 weak, 2 strong
    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double m = mag[i];
            if (m < tl) continue;
            const int b = dir[i];
            const double neg = mag_at(x - off_x[b], y - off_y[b]);
            const double pos = mag_at(x + off_x[b], y + off_y[b]);
            if (!(m > neg && m >= pos)) continue;
            if (m >= th) {
                state[i] = 2;
                stack.push_back(i);
            } else {
                state[i] = 1;
            }
        }
    }

    // Hysteresis: grow strong edges through weak candidates, 8-connected.
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(i % w);
        const int y = static_cast<int>(i / w);
        edges.set(x, y, true);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int qx = x + dx;
                const int qy = y + dy;
                if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                const std::size_t q = static_cast<std::size_t>(qy) * w + qx;
                if (state[q] == 1) {
                    state[q] = 2;
                    stack.push_back(q);
                }
            }
    }
    return edges;
}

int count_edges_in_block(const EdgeMap& edges, int x0, int y0, int size) {
    if (x0 < 0 || y0 < 0 || size < 1 || x0 + size > edges.width() ||
        y0 + size > edges.height())
        throw std::invalid_argument("count_edges_in_block: footprint out of bounds");
    int count = 0;
    for (int y = y0; y < y0 + size; ++y)
        for (int x = x0; x < x0 + size; ++x)
            if (edges.get(x, y)) ++count;
    return count;
}

}  // namespace roicomp
