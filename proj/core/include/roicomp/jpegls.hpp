#ifndef ROICOMP_JPEGLS_HPP
#define ROICOMP_JPEGLS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "roicomp/image.hpp"

namespace roicomp {

/// Coding parameters of ITU-T T.87. Defaults are the standard's values for
/// an 8-bit image; near is fixed to 0 (lossless) in this codebase.
struct JpeglsParams {
    int near = 0;
    int maxval = 255;
    int t1 = 3;
    int t2 = 7;
    int t3 = 21;
    int reset = 64;

    bool operator==(const JpeglsParams&) const = default;
};

class JlsError : public Error {
public:
    enum class Kind {
        bad_marker,          // broken marker framing or segment lengths
        corrupt_data,        // entropy decoding ran off the rails
        unsupported,         // valid stream outside this codec's scope
        dimension_overflow,  // declared dimensions exceed sane limits
    };

    JlsError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Encodes an 8-bit single-component image as a complete JPEG-LS
/// interchange stream (SOI..EOI). Lossless: decode(encode(x)) == x.
/// No LSE marker is written when params equal the defaults.
std::vector<std::uint8_t> jpegls_encode(const GrayImage& image,
                                        const JpeglsParams& params = {});

/// Decodes a complete JPEG-LS stream produced by this encoder or any
/// conformant encoder (8-bit, single component, near-lossless 0).
GrayImage jpegls_decode(std::span<const std::uint8_t> stream);

/// LOCO-I median edge detector predictor.
int predict_med(int a, int b, int c);

/// 9-region context gradient quantizer, odd-symmetric.
int quantize_gradient(int d, const JpeglsParams& params = {});

}  // namespace roicomp

#endif
