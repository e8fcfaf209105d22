#ifndef ROICOMP_IMAGE_HPP
#define ROICOMP_IMAGE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace roicomp {

/// 8-bit grayscale raster, row-major. The unit of compression.
class GrayImage {
public:
    GrayImage() = default;

    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        check_dims(width, height);
        samples_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    GrayImage(int width, int height, std::vector<std::uint8_t> samples)
        : width_(width), height_(height), samples_(std::move(samples)) {
        check_dims(width, height);
        if (samples_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("GrayImage: sample count does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return samples_.size(); }

    std::uint8_t at(int x, int y) const {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }

    std::span<const std::uint8_t> samples() const { return samples_; }
    std::span<std::uint8_t> samples() { return samples_; }

    const std::uint8_t* row(int y) const {
        return samples_.data() + static_cast<std::size_t>(y) * width_;
    }
    std::uint8_t* row(int y) {
        return samples_.data() + static_cast<std::size_t>(y) * width_;
    }

    bool operator==(const GrayImage&) const = default;

private:
    static void check_dims(int width, int height) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("GrayImage: dimensions must be at least 1x1");
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

/// Per-pixel ROI probability quantized to 8 bits; stored value v means v/255.
class ProbabilityMap {
public:
    ProbabilityMap() = default;

    ProbabilityMap(int width, int height, std::vector<std::uint8_t> values)
        : raster_(width, height, std::move(values)) {}

    explicit ProbabilityMap(GrayImage raster) : raster_(std::move(raster)) {}

    int width() const { return raster_.width(); }
    int height() const { return raster_.height(); }

    std::uint8_t raw(int x, int y) const { return raster_.at(x, y); }
    double value(int x, int y) const { return raster_.at(x, y) / 255.0; }

    const GrayImage& raster() const { return raster_; }

    bool operator==(const ProbabilityMap&) const = default;

private:
    GrayImage raster_;
};

/// Row-major boolean raster shared by ROI masks and edge maps.
class BitMask {
public:
    BitMask() = default;

    BitMask(int width, int height, bool fill = false)
        : width_(width), height_(height),
          bits_(static_cast<std::size_t>(width) * height, fill ? 1 : 0) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("BitMask: dimensions must be at least 1x1");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool get(int x, int y) const {
        return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool value) {
        bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto b : bits_) n += b;
        return n;
    }
    bool empty_mask() const {
        for (auto b : bits_)
            if (b) return false;
        return true;
    }

    std::span<const std::uint8_t> bits() const { return bits_; }

    bool operator==(const BitMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;  // one byte per bit, 0 or 1
};

using RoiMask = BitMask;
using EdgeMap = BitMask;

/// Base class for this library's recoverable errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace roicomp

#endif
