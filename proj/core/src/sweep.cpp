#include "roicomp/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace roicomp {

namespace {

struct JobResult {
    std::uint64_t n_o = 0;
    std::uint64_t n_b = 0;
    double cr = 0.0;
    double mse = 0.0;
    std::optional<double> psnr;
};

std::string fmt(double v, const char* spec) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

SweepResult sweep(std::span<const CorpusItem> corpus, const SweepOptions& options) {
    if (corpus.empty())
        throw std::invalid_argument("sweep: corpus is empty");
    if (options.gamma0_values.size() < 2)
        throw std::invalid_argument("sweep: need at least 2 gamma0 values");
    if (options.edge_variants.empty())
        throw std::invalid_argument("sweep: need at least one edge variant");
    options.base.validate();
    for (const CorpusItem& item : corpus)
        if (item.gt.empty_mask())
            throw std::invalid_argument("sweep: ground-truth mask of '" + item.id +
                                        "' is empty");

    const std::size_t n_img = corpus.size();
    const std::size_t n_gamma = options.gamma0_values.size();
    const std::size_t n_var = options.edge_variants.size();
    const std::size_t n_jobs = n_img * n_gamma * n_var;

    std::vector<JobResult> results(n_jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= n_jobs) return;
            try {
                const std::size_t v = j / (n_gamma * n_img);
                const std::size_t g = (j / n_img) % n_gamma;
                const std::size_t i = j % n_img;

                CompressionParams params = options.base;
                params.gamma0 = options.gamma0_values[g];
                params.use_edges = options.edge_variants[v];

                const CorpusItem& item = corpus[i];
                const PipelineResult run = compress(item.image, item.prob, params);

                JobResult& out = results[j];
                out.n_o = run.metrics.n_o;
                out.n_b = run.metrics.n_b;
                out.cr = run.metrics.cr;
                out.mse = roi_mse(item.image, run.processed, item.gt);
                out.psnr = roi_psnr(out.mse, 255);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const int n_workers = std::max(1, std::min<int>(options.workers,
                                                    static_cast<int>(n_jobs)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Corpus-averaged curve per variant, then per-row assembly in fixed order.
    SweepResult result;
    result.rows.reserve(n_jobs);
    for (std::size_t v = 0; v < n_var; ++v) {
        std::vector<SweepPoint> points;
        points.reserve(n_gamma);
        for (std::size_t g = 0; g < n_gamma; ++g) {
            double cr_sum = 0.0;
            double psnr_sum = 0.0;
            std::size_t psnr_cnt = 0;
            for (std::size_t i = 0; i < n_img; ++i) {
                const JobResult& jr = results[(v * n_gamma + g) * n_img + i];
                cr_sum += jr.cr;
                if (jr.psnr.has_value()) {
                    psnr_sum += *jr.psnr;
                    ++psnr_cnt;
                }
            }
            SweepPoint p;
            p.gamma0 = options.gamma0_values[g];
            p.cr = cr_sum / static_cast<double>(n_img);
            if (psnr_cnt > 0) p.psnr = psnr_sum / static_cast<double>(psnr_cnt);
            points.push_back(p);
        }

        VariantResult vr;
        vr.edges_enabled = options.edge_variants[v];
        vr.curve = normalize_curve(points);
        vr.recommended_gamma0 = vr.curve.recommended_gamma0();

        for (std::size_t g = 0; g < n_gamma; ++g) {
            const CurvePoint* cp = nullptr;
            for (const CurvePoint& c : vr.curve.points)
                if (c.gamma0 == options.gamma0_values[g]) {
                    cp = &c;
                    break;
                }
            for (std::size_t i = 0; i < n_img; ++i) {
                const JobResult& jr = results[(v * n_gamma + g) * n_img + i];
                SweepRow row;
                row.image_id = corpus[i].id;
                row.gamma0 = options.gamma0_values[g];
                row.sigma = options.base.sigma;
                row.edges_enabled = options.edge_variants[v];
                row.n_o = jr.n_o;
                row.n_b = jr.n_b;
                row.cr = jr.cr;
                row.mse = jr.mse;
                row.psnr = jr.psnr;
                if (cp) {
                    row.cr_norm = cp->cr_norm;
                    row.psnr_norm = cp->psnr_norm;
                    row.combined = cp->combined;
                }
                result.rows.push_back(std::move(row));
            }
        }
        result.variants.push_back(std::move(vr));
    }
    return result;
}

std::string to_csv(const SweepResult& result) {
    std::string out =
        "image_id,gamma0,sigma,edges_enabled,n_o,n_b,cr,mse,psnr,cr_norm,psnr_norm,combined\n";
    for (const SweepRow& r : result.rows) {
        out += r.image_id;
        out += ',' + std::to_string(r.gamma0);
        out += ',' + fmt(r.sigma, "%g");
        out += ',' + std::string(r.edges_enabled ? "1" : "0");
        out += ',' + std::to_string(r.n_o);
        out += ',' + std::to_string(r.n_b);
        out += ',' + fmt(r.cr, "%.6f");
        out += ',' + fmt(r.mse, "%.6f");
        out += ',';
        out += r.psnr ? fmt(*r.psnr, "%.4f") : "lossless";
        out += ',';
        if (r.cr_norm) out += fmt(*r.cr_norm, "%.6f");
        out += ',';
        if (r.psnr_norm) out += fmt(*r.psnr_norm, "%.6f");
        out += ',';
        if (r.combined) out += fmt(*r.combined, "%.6f");
        out += '\n';
    }
    return out;
}

}  // namespace roicomp
