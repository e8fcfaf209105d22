#include "roicomp/pgm.hpp"

#include <cstdio>
#include <fstream>

namespace roicomp {

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comments (which run to end of line).
// Returns false when the input is exhausted.
bool skip_separators(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        if (is_pgm_space(bytes[pos])) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            return true;
        }
    }
    return false;
}

long parse_header_int(std::span<const std::uint8_t> bytes, std::size_t& pos,
                      const char* what) {
    if (!skip_separators(bytes, pos))
        throw PgmError(PgmError::Kind::bad_header,
                       std::string("pgm: missing ") + what);
    if (bytes[pos] < '0' || bytes[pos] > '9')
        throw PgmError(PgmError::Kind::bad_header,
                       std::string("pgm: non-numeric ") + what);
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1'000'000'000)
            throw PgmError(PgmError::Kind::bad_header,
                           std::string("pgm: ") + what + " out of range");
        ++pos;
    }
    return value;
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw PgmError(PgmError::Kind::bad_magic, "pgm: not a binary PGM (missing P5 magic)");
    std::size_t pos = 2;

    const long width = parse_header_int(bytes, pos, "width");
    const long height = parse_header_int(bytes, pos, "height");
    const long maxval = parse_header_int(bytes, pos, "maxval");

    if (width < 1 || height < 1)
        throw PgmError(PgmError::Kind::bad_header, "pgm: dimensions must be positive");
    if (maxval > 255)
        throw PgmError(PgmError::Kind::unsupported_maxval,
                       "pgm: maxval " + std::to_string(maxval) + " exceeds 255");
    if (maxval < 1)
        throw PgmError(PgmError::Kind::bad_header, "pgm: maxval must be positive");

    // Exactly one whitespace byte separates the header from the payload.
    if (pos >= bytes.size() || !is_pgm_space(bytes[pos]))
        throw PgmError(PgmError::Kind::bad_header, "pgm: missing separator before payload");
    ++pos;

    const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - pos < expected)
        throw PgmError(PgmError::Kind::truncated_payload,
                       "pgm: payload holds " + std::to_string(bytes.size() - pos) +
                           " bytes, expected " + std::to_string(expected));

    std::vector<std::uint8_t> samples(bytes.begin() + pos, bytes.begin() + pos + expected);
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n",
                                image.width(), image.height());
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(n) + image.pixel_count());
    out.insert(out.end(), header, header + n);
    out.insert(out.end(), image.samples().begin(), image.samples().end());
    return out;
}

ProbabilityMap read_probability_map(std::span<const std::uint8_t> bytes) {
    return ProbabilityMap(read_pgm(bytes));
}

GrayImage mask_to_image(const BitMask& mask) {
    GrayImage out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            out.at(x, y) = mask.get(x, y) ? 255 : 0;
    return out;
}

BitMask mask_from_image(const GrayImage& image) {
    BitMask out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            out.set(x, y, image.at(x, y) != 0);
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error("short write to " + path.string());
}

GrayImage load_pgm(const std::filesystem::path& path) {
    return read_pgm(read_file(path));
}

void save_pgm(const std::filesystem::path& path, const GrayImage& image) {
    write_file(path, write_pgm(image));
}

}  // namespace roicomp
