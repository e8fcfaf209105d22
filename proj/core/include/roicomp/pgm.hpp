#ifndef ROICOMP_PGM_HPP
#define ROICOMP_PGM_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "roicomp/image.hpp"

namespace roicomp {

/// Raised on malformed binary PGM input; kind() distinguishes the failure.
class PgmError : public Error {
public:
    enum class Kind {
        bad_magic,          // does not start with "P5"
        bad_header,         // missing/non-numeric width, height or maxval
        unsupported_maxval, // maxval > 255
        truncated_payload,  // fewer sample bytes than width*height
    };

    PgmError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Strict binary PGM (P5) parser. Header tokens are whitespace separated,
/// '#' comments allowed; exactly one whitespace byte precedes the payload.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Canonical serialization: "P5\n<w> <h>\n255\n" + raw samples.
/// read_pgm(write_pgm(x)) == x bit-exactly.
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

/// Same container as read_pgm; stored value v means probability v/255.
ProbabilityMap read_probability_map(std::span<const std::uint8_t> bytes);

/// Masks travel in the same container: 0 = false, 255 = true.
GrayImage mask_to_image(const BitMask& mask);
BitMask mask_from_image(const GrayImage& image);  // any nonzero sample is true

// File helpers used by the CLI and tests.
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GrayImage& image);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace roicomp

#endif
