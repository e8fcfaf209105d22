#include "roicomp/dct.hpp"

#include <cmath>

namespace roicomp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// basis[u][x] = alpha(u) * cos((2x+1) u pi / (2N))
struct Basis {
    int size;
    std::array<double, 64> m;
    double at(int u, int x) const { return m[u * size + x]; }
};

Basis make_basis(int size) {
    Basis b{size, {}};
    for (int u = 0; u < size; ++u) {
        const double alpha = std::sqrt((u == 0 ? 1.0 : 2.0) / size);
        for (int x = 0; x < size; ++x)
            b.m[u * size + x] = alpha * std::cos((2 * x + 1) * u * kPi / (2 * size));
    }
    return b;
}

const Basis& basis_for(int size) {
    static const Basis b4 = make_basis(4);
    static const Basis b8 = make_basis(8);
    switch (size) {
        case 4: return b4;
        case 8: return b8;
        default: throw std::invalid_argument("dct: block size must be 4 or 8");
    }
}

std::uint8_t round_clamp(double v) {
    const long r = std::lround(v);  // ties away from zero
    if (r < 0) return 0;
    if (r > 255) return 255;
    return static_cast<std::uint8_t>(r);
}

}  // namespace

CoefficientBlock forward_dct(const PixelBlock& block) {
    const Basis& b = basis_for(block.size);
    const int n = block.size;
    // rows first: tmp[u][y] = sum_x basis[u][x] f(x,y)
    std::array<double, 64> tmp{};
    for (int y = 0; y < n; ++y)
        for (int u = 0; u < n; ++u) {
            double acc = 0.0;
            for (int x = 0; x < n; ++x)
                acc += b.at(u, x) * block.samples[y * n + x];
            tmp[u * n + y] = acc;
        }
    CoefficientBlock out{n, {}};
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            double acc = 0.0;
            for (int y = 0; y < n; ++y)
                acc += b.at(v, y) * tmp[u * n + y];
            out.coeffs[v * n + u] = acc;
        }
    return out;
}

std::array<double, 64> inverse_dct_real(const CoefficientBlock& coeffs) {
    const Basis& b = basis_for(coeffs.size);
    const int n = coeffs.size;
    // columns first: tmp[x][v] = sum_u basis[u][x] F(u,v)
    std::array<double, 64> tmp{};
    for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x) {
            double acc = 0.0;
            for (int u = 0; u < n; ++u)
                acc += b.at(u, x) * coeffs.coeffs[v * n + u];
            tmp[x * n + v] = acc;
        }
    std::array<double, 64> out{};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            double acc = 0.0;
            for (int v = 0; v < n; ++v)
                acc += b.at(v, y) * tmp[x * n + v];
            out[y * n + x] = acc;
        }
    return out;
}

PixelBlock inverse_dct(const CoefficientBlock& coeffs) {
    const std::array<double, 64> real = inverse_dct_real(coeffs);
    PixelBlock out{coeffs.size, {}};
    const int n = coeffs.size;
    for (int i = 0; i < n * n; ++i)
        out.samples[i] = round_clamp(real[i]);
    return out;
}

ZigzagOrder make_zigzag_order(int size) {
    if (size < 1)
        throw std::invalid_argument("zigzag: size must be at least 1");
    ZigzagOrder order{size, {}};
    order.indices.reserve(static_cast<std::size_t>(size) * size);
    for (int s = 0; s <= 2 * (size - 1); ++s) {
        if (s % 2 != 0) {
            // odd diagonal: walk down-left from the top row
            int i = std::max(0, s - size + 1);
            int j = std::min(s, size - 1);
            for (; i < size && j >= 0; ++i, --j)
                order.indices.push_back(i * size + j);
        } else {
            // even diagonal: walk up-right from the left column
            int i = std::min(s, size - 1);
            int j = std::max(0, s - size + 1);
            for (; i >= 0 && j < size; --i, ++j)
                order.indices.push_back(i * size + j);
        }
    }
    return order;
}

const ZigzagOrder& zigzag_order(int size) {
    static const ZigzagOrder z4 = make_zigzag_order(4);
    static const ZigzagOrder z8 = make_zigzag_order(8);
    switch (size) {
        case 4: return z4;
        case 8: return z8;
        default: throw std::invalid_argument("zigzag_order: block size must be 4 or 8");
    }
}

int compute_gamma(int gamma0, int n_edge, int size, Eq1Interpretation interpretation) {
    if (gamma0 < 1)
        throw std::invalid_argument("compute_gamma: gamma0 must be at least 1");
    if (n_edge < 0)
        throw std::invalid_argument("compute_gamma: edge count cannot be negative");
    const int full = size * size;
    const int budget = (interpretation == Eq1Interpretation::min_cap)
                           ? std::min(full, gamma0 + n_edge)
                           : std::max(full, gamma0 + n_edge);
    return std::min(full, std::max(1, budget));
}

CoefficientBlock truncate_coefficients(CoefficientBlock coeffs, int gamma,
                                       const ZigzagOrder& order) {
    const int full = coeffs.size * coeffs.size;
    if (gamma < 1 || gamma > full)
        throw std::invalid_argument("truncate_coefficients: gamma out of range");
    for (int k = gamma; k < full; ++k)
        coeffs.coeffs[order.indices[k]] = 0.0;
    return coeffs;
}

PixelBlock reduce_block(const PixelBlock& block, int gamma) {
    return inverse_dct(
        truncate_coefficients(forward_dct(block), gamma, zigzag_order(block.size)));
}

}  // namespace roicomp
