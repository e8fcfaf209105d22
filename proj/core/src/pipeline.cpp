#include "roicomp/pipeline.hpp"

#include "roicomp/canny.hpp"
#include "roicomp/gaussian.hpp"
#include "roicomp/segmentation.hpp"

namespace roicomp {

void CompressionParams::validate() const {
    if (gamma0 < 1 || gamma0 > 64)
        throw std::invalid_argument("params: gamma0 must lie in [1,64]");
    if (!(canny_high > 0.0) || canny_high > 1.0)
        throw std::invalid_argument("params: canny_high must lie in (0,1]");
    if (!(canny_low_ratio > 0.0) || canny_low_ratio > 1.0)
        throw std::invalid_argument("params: canny_low_ratio must lie in (0,1]");
    if (!(canny_sigma > 0.0))
        throw std::invalid_argument("params: canny_sigma must be positive");
    if (prob_threshold < 0.0 || prob_threshold > 1.0)
        throw std::invalid_argument("params: prob_threshold must lie in [0,1]");
}

PipelineResult compress(const GrayImage& image, const ProbabilityMap& prob,
                        const CompressionParams& params) {
    params.validate();
    if (prob.width() != image.width() || prob.height() != image.height())
        throw std::invalid_argument("compress: probability map dimensions differ from image");

    PipelineResult r;
    r.predicted_roi = segment(prob, params.prob_threshold);

    // Edges come from the whole image, before any partitioning.
    if (params.use_edges)
        r.edges = canny(image, params.canny_high,
                        params.canny_low_ratio * params.canny_high, params.canny_sigma);
    else
        r.edges = EdgeMap(image.width(), image.height());

    r.plan = partition(image.width(), image.height(), r.predicted_roi);
    for (BlockDescriptor& leaf : r.plan.leaves)
        leaf.edge_count = count_edges_in_block(r.edges, leaf.x, leaf.y, leaf.size);

    // Reduce NROI leaves in the DCT domain; ROI leaves stay untouched.
    GrayImage tiled = image;
    PixelBlock block;
    for (const BlockDescriptor& leaf : r.plan.leaves) {
        if (leaf.cls == BlockClass::roi) {
            ++r.summary.roi4;  // ROI leaves are always 4x4
            continue;
        }
        if (leaf.size == 8)
            ++r.summary.nroi8;
        else
            ++r.summary.nroi4;
        if (leaf.size == 4 && !params.truncate_4x4) continue;  // keep all 16

        const int n_edge = params.use_edges ? leaf.edge_count : 0;
        const int gamma = compute_gamma(params.gamma0, n_edge, leaf.size, params.eq1);
        if (gamma == leaf.size * leaf.size) continue;  // identity

        block.size = leaf.size;
        for (int y = 0; y < leaf.size; ++y)
            for (int x = 0; x < leaf.size; ++x)
                block.samples[y * leaf.size + x] = tiled.at(leaf.x + x, leaf.y + y);
        const PixelBlock reduced = reduce_block(block, gamma);
        for (int y = 0; y < leaf.size; ++y)
            for (int x = 0; x < leaf.size; ++x)
                tiled.at(leaf.x + x, leaf.y + y) = reduced.samples[y * leaf.size + x];
    }

    // Deblocking filter over the tiled image, then exact ROI restoration.
    // Margin pixels outside the 8x8 grid are restored as well.
    if (params.sigma > 0.0) {
        GrayImage smoothed = smooth(tiled, params.sigma);
        RoiMask restore = r.predicted_roi;
        const int wfull = (image.width() / 8) * 8;
        const int hfull = (image.height() / 8) * 8;
        for (int y = 0; y < image.height(); ++y)
            for (int x = 0; x < image.width(); ++x)
                if (x >= wfull || y >= hfull) restore.set(x, y, true);
        r.processed = restore_roi(smoothed, image, restore);
    } else {
        r.processed = restore_roi(tiled, image, r.predicted_roi);
    }

    r.stream = jpegls_encode(r.processed, params.jpegls);

    r.metrics.n_o = jpegls_encode(image, params.jpegls).size();
    r.metrics.n_b = r.stream.size();
    r.metrics.cr = compression_ratio(r.metrics.n_o, r.metrics.n_b);
    r.metrics.n_g = r.predicted_roi.count();
    if (r.metrics.n_g > 0) {
        r.metrics.mse = roi_mse(image, r.processed, r.predicted_roi);
        r.metrics.psnr = roi_psnr(r.metrics.mse, 255);
    }
    return r;
}

GrayImage decompress(std::span<const std::uint8_t> stream) {
    return jpegls_decode(stream);
}

}  // namespace roicomp
