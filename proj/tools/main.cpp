// roicomp: ROI-aware grayscale image compression toolkit.
//
// Subcommands: compress, decompress, metrics, sweep, synth.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "roicomp/pgm.hpp"
#include "roicomp/pipeline.hpp"
#include "roicomp/segmentation.hpp"
#include "roicomp/sweep.hpp"
#include "roicomp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace roicomp;

namespace {

struct ParamFlags {
    int gamma0 = 16;
    double sigma = 1.0;
    double canny_high = 0.15;
    double canny_low_ratio = 0.4;
    double prob_threshold = 0.5;
    bool no_edges = false;
    bool truncate_4x4 = false;
    std::string eq1 = "min";

    CompressionParams to_params() const {
        CompressionParams p;
        p.gamma0 = gamma0;
        p.sigma = sigma;
        p.canny_high = canny_high;
        p.canny_low_ratio = canny_low_ratio;
        p.prob_threshold = prob_threshold;
        p.use_edges = !no_edges;
        p.truncate_4x4 = truncate_4x4;
        p.eq1 = (eq1 == "max") ? Eq1Interpretation::max_literal
                               : Eq1Interpretation::min_cap;
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->set_config("--config", "", "Read options from a key=value file");
    cmd->add_option("--sigma", f.sigma, "Smoothing scale; 0 disables smoothing")
        ->capture_default_str();
    cmd->add_option("--canny-high", f.canny_high, "Canny high threshold fraction")
        ->capture_default_str();
    cmd->add_option("--canny-low-ratio", f.canny_low_ratio, "Canny low/high ratio")
        ->capture_default_str();
    cmd->add_option("--prob-threshold", f.prob_threshold, "ROI probability cutoff")
        ->capture_default_str();
    cmd->add_flag("--no-edges", f.no_edges, "Ignore the edge term of the budget");
    cmd->add_flag("--truncate-4x4", f.truncate_4x4, "Also truncate NROI 4x4 sub-blocks");
    cmd->add_option("--eq1", f.eq1, "Budget formula reading")
        ->check(CLI::IsMember({"min", "max"}))
        ->capture_default_str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = text.substr(pos, comma - pos);
        const std::size_t dots = tok.find("..");
        if (dots != std::string::npos) {
            const int lo = std::stoi(tok.substr(0, dots));
            const int hi = std::stoi(tok.substr(dots + 2));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else if (!tok.empty()) {
            out.push_back(std::stoi(tok));
        }
        pos = comma + 1;
    }
    return out;
}

int run_compress(const std::string& image_path, const std::string& prob_path,
                 const std::string& out_path, const ParamFlags& flags,
                 const std::string& dump_plan, const std::string& dump_edges,
                 const std::string& dump_processed) {
    const GrayImage image = load_pgm(image_path);
    const ProbabilityMap prob = read_probability_map(read_file(prob_path));
    const PipelineResult r = compress(image, prob, flags.to_params());
    write_file(out_path, r.stream);
    if (!dump_plan.empty()) {
        const std::string csv = plan_to_csv(r.plan);
        write_file(dump_plan, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()),
                                        csv.size()));
    }
    if (!dump_edges.empty()) save_pgm(dump_edges, mask_to_image(r.edges));
    if (!dump_processed.empty()) save_pgm(dump_processed, r.processed);
    std::printf("n_o=%llu n_b=%llu cr=%.6f roi_pixels=%llu\n",
                static_cast<unsigned long long>(r.metrics.n_o),
                static_cast<unsigned long long>(r.metrics.n_b), r.metrics.cr,
                static_cast<unsigned long long>(r.metrics.n_g));
    return 0;
}

int run_metrics(const std::string& orig_path, const std::string& proc_path,
                const std::string& gt_path) {
    const GrayImage orig = load_pgm(orig_path);
    const GrayImage proc = load_pgm(proc_path);
    const RoiMask gt = mask_from_image(load_pgm(gt_path));
    const std::uint64_t n_o = jpegls_encode(orig).size();
    const std::uint64_t n_b = jpegls_encode(proc).size();
    const double mse = roi_mse(orig, proc, gt);
    const auto psnr = roi_psnr(mse, 255);
    std::printf("n_o=%llu\nn_b=%llu\ncr=%.6f\nmse=%.6f\npsnr=%s\nn_g=%llu\n",
                static_cast<unsigned long long>(n_o),
                static_cast<unsigned long long>(n_b), compression_ratio(n_o, n_b), mse,
                psnr ? (std::to_string(*psnr).c_str()) : "lossless",
                static_cast<unsigned long long>(gt.count()));
    return 0;
}

std::vector<CorpusItem> load_corpus(const fs::path& dir, const fs::path& gt_dir) {
    std::vector<CorpusItem> corpus;
    std::vector<fs::path> bases;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.path().extension() != ".pgm") continue;
        if (name.ends_with("_prob.pgm") || name.ends_with("_gt.pgm")) continue;
        bases.push_back(entry.path());
    }
    std::sort(bases.begin(), bases.end());
    for (const fs::path& base : bases) {
        const std::string stem = base.stem().string();
        const fs::path prob = dir / (stem + "_prob.pgm");
        const fs::path gt = gt_dir / (stem + "_gt.pgm");
        if (!fs::exists(prob))
            throw Error("sweep: missing probability map " + prob.string());
        if (!fs::exists(gt))
            throw Error("sweep: missing ground-truth mask " + gt.string());
        corpus.push_back({stem, load_pgm(base),
                          read_probability_map(read_file(prob)),
                          mask_from_image(load_pgm(gt))});
    }
    if (corpus.empty()) throw Error("sweep: no corpus images found in " + dir.string());
    return corpus;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ROI-aware grayscale image compression toolkit"};
    app.require_subcommand(1);

    std::string stage = "startup";
    try {
        // compress
        auto* c = app.add_subcommand("compress", "Compress an image with its ROI map");
        std::string c_img, c_prob, c_out, c_plan, c_edges, c_proc;
        ParamFlags c_flags;
        c->add_option("image", c_img, "Input image (binary PGM)")->required();
        c->add_option("prob", c_prob, "ROI probability map (binary PGM)")->required();
        c->add_option("-o,--output", c_out, "Output .jls stream")->required();
        c->add_option("--gamma0", c_flags.gamma0, "Kept-coefficient base budget")
            ->check(CLI::Range(1, 64))
            ->capture_default_str();
        add_param_flags(c, c_flags);
        c->add_option("--dump-plan", c_plan, "Write the partition plan CSV");
        c->add_option("--dump-edges", c_edges, "Write the edge map as PGM");
        c->add_option("--dump-processed", c_proc, "Write the pre-coding image as PGM");

        // decompress
        auto* d = app.add_subcommand("decompress", "Decode a .jls stream to PGM");
        std::string d_in, d_out;
        d->add_option("stream", d_in, "Input .jls stream")->required();
        d->add_option("-o,--output", d_out, "Output PGM")->required();

        // metrics
        auto* m = app.add_subcommand("metrics", "CR and ROI PSNR of a processed image");
        std::string m_orig, m_proc, m_gt;
        m->add_option("original", m_orig, "Original image")->required();
        m->add_option("processed", m_proc, "Processed image")->required();
        m->add_option("gt", m_gt, "Ground-truth ROI mask")->required();

        // sweep
        auto* s = app.add_subcommand("sweep", "Rate-distortion sweep over gamma0");
        std::string s_dir, s_out, s_gamma = "1,4,8,16,32,64", s_gt_dir;
        int s_workers = 1;
        bool s_both_edges = false;
        ParamFlags s_flags;
        s->add_option("corpus", s_dir, "Corpus directory")->required();
        s->add_option("-o,--output", s_out, "Output CSV")->required();
        s->add_option("--gamma0", s_gamma, "Comma list or a..b range")
            ->capture_default_str();
        s->add_option("--gt-dir", s_gt_dir, "Directory of *_gt.pgm masks");
        s->add_option("--workers", s_workers, "Worker thread count")
            ->check(CLI::Range(1, 256))
            ->capture_default_str();
        s->add_flag("--both-edges", s_both_edges,
                    "Run both edges-on and edges-off variants");
        add_param_flags(s, s_flags);

        // synth
        auto* g = app.add_subcommand("synth", "Generate a synthetic angiogram corpus");
        std::string g_seeds = "0..19", g_dir;
        int g_size = 512;
        g->add_option("--seeds", g_seeds, "Comma list or a..b range")
            ->capture_default_str();
        g->add_option("--size", g_size, "Frame side length")->capture_default_str();
        g->add_option("-o,--output", g_dir, "Output directory")->required();

        app.parse(argc, argv);

        if (c->parsed()) {
            stage = "compress";
            return run_compress(c_img, c_prob, c_out, c_flags, c_plan, c_edges, c_proc);
        }
        if (d->parsed()) {
            stage = "decompress";
            const GrayImage img = decompress(read_file(d_in));
            save_pgm(d_out, img);
            return 0;
        }
        if (m->parsed()) {
            stage = "metrics";
            return run_metrics(m_orig, m_proc, m_gt);
        }
        if (s->parsed()) {
            stage = "sweep";
            SweepOptions opt;
            opt.gamma0_values = parse_int_list(s_gamma);
            opt.base = s_flags.to_params();
            opt.workers = s_workers;
            if (s_both_edges)
                opt.edge_variants = {true, false};
            else
                opt.edge_variants = {!s_flags.no_edges};
            const fs::path gt_dir = s_gt_dir.empty() ? fs::path(s_dir) : fs::path(s_gt_dir);
            const auto corpus = load_corpus(s_dir, gt_dir);
            const SweepResult result = sweep(corpus, opt);
            const std::string csv = to_csv(result);
            write_file(s_out, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()),
                                        csv.size()));
            for (const VariantResult& v : result.variants)
                std::printf("edges=%d recommended_gamma0=%d\n", v.edges_enabled ? 1 : 0,
                            v.recommended_gamma0);
            return 0;
        }
        if (g->parsed()) {
            stage = "synth";
            fs::create_directories(g_dir);
            for (int seed : parse_int_list(g_seeds)) {
                const SyntheticSample sample = generate_synthetic_angiogram(
                    static_cast<std::uint64_t>(seed), g_size, g_size);
                const std::string stem = "synth_" + std::to_string(seed);
                save_pgm(fs::path(g_dir) / (stem + ".pgm"), sample.image);
                save_pgm(fs::path(g_dir) / (stem + "_prob.pgm"), sample.prob.raster());
                save_pgm(fs::path(g_dir) / (stem + "_gt.pgm"),
                         mask_to_image(sample.ground_truth));
            }
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "roicomp: %s: %s\n", stage.c_str(), e.what());
        return 1;
    }
    return 0;
}
