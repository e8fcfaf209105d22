#ifndef ROICOMP_DCT_HPP
#define ROICOMP_DCT_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "roicomp/image.hpp"

namespace roicomp {

/// Spatial samples of one square block, row-major. size is 8 or 4.
struct PixelBlock {
    int size = 0;
    std::array<std::uint8_t, 64> samples{};
};

/// Coefficients of the orthonormal 2-D DCT-II of one block, row-major.
struct CoefficientBlock {
    int size = 0;
    std::array<double, 64> coeffs{};
};

/// JPEG scan order: anti-diagonals with alternating direction, DC first.
struct ZigzagOrder {
    int size = 0;
    std::vector<int> indices;  // linear coefficient positions, scan order
};

/// Reading of the kept-coefficient formula. The printed form uses max(),
/// which keeps every coefficient; min_cap treats that as a typo for a cap.
enum class Eq1Interpretation { min_cap, max_literal };

/// Orthonormal 2-D DCT-II. A constant block of value c maps to DC = size*c.
CoefficientBlock forward_dct(const PixelBlock& block);

/// Inverse transform rounded to nearest integer (ties away from zero),
/// clamped to [0,255].
PixelBlock inverse_dct(const CoefficientBlock& coeffs);

/// Inverse transform before rounding; used by numeric tests and properties.
std::array<double, 64> inverse_dct_real(const CoefficientBlock& coeffs);

/// Scan order for any size >= 1.
ZigzagOrder make_zigzag_order(int size);

/// Cached scan orders for the two block sizes used by the pipeline.
const ZigzagOrder& zigzag_order(int size);

/// Kept-coefficient count: min(size^2, gamma0 + n_edge) under min_cap.
int compute_gamma(int gamma0, int n_edge, int size,
                  Eq1Interpretation interpretation = Eq1Interpretation::min_cap);

/// Keeps the first gamma scan positions, zeroes the rest.
CoefficientBlock truncate_coefficients(CoefficientBlock coeffs, int gamma,
                                       const ZigzagOrder& order);

/// forward_dct -> truncate_coefficients -> inverse_dct.
PixelBlock reduce_block(const PixelBlock& block, int gamma);

}  // namespace roicomp

#endif
