// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "roicomp/dct.hpp"
#include "roicomp/jpegls.hpp"
#include "roicomp/metrics.hpp"
#include "roicomp/pgm.hpp"
#include "roicomp/pipeline.hpp"
#include "roicomp/sweep.hpp"
#include "roicomp/synthetic.hpp"

using namespace roicomp;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kDataDir = ROICOMP_TEST_DATA_DIR;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

RoiMask erode3x3(const RoiMask& m) {
    RoiMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            bool all = true;
            for (int dy = -1; dy <= 1 && all; ++dy)
                for (int dx = -1; dx <= 1 && all; ++dx) {
                    const int qx = x + dx;
                    const int qy = y + dy;
                    if (qx < 0 || qx >= m.width() || qy < 0 || qy >= m.height() ||
                        !m.get(qx, qy))
                        all = false;
                }
            out.set(x, y, all);
        }
    return out;
}

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> rx = ranks(xs);
    const std::vector<double> ry = ranks(ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0 || dy == 0) return 0.0;
    return num / std::sqrt(dx * dy);
}

struct Corpus {
    std::vector<SyntheticSample> samples;
    std::vector<CorpusItem> items;          // gt = eroded ground truth
    std::vector<RoiMask> predicted;         // filled by criterion 1
};

Corpus build_corpus() {
    Corpus c;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SyntheticSample s = generate_synthetic_angiogram(seed, 512, 512);
        CorpusItem item;
        item.id = "synth_" + std::to_string(seed);
        item.image = s.image;
        item.prob = s.prob;
        item.gt = erode3x3(s.ground_truth);
        c.items.push_back(std::move(item));
        c.samples.push_back(std::move(s));
    }
    return c;
}

const CurvePoint* curve_at(const TradeoffCurve& curve, int gamma0) {
    for (const CurvePoint& p : curve.points)
        if (p.gamma0 == gamma0) return &p;
    return nullptr;
}

void criterion1_lossless(Corpus& corpus) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string why = "all predicted-ROI pixels identical";
    for (std::size_t i = 0; i < corpus.items.size() && ok; ++i) {
        const GrayImage& img = corpus.samples[i].image;
        const PipelineResult r = compress(img, corpus.samples[i].prob, {});
        const GrayImage decoded = decompress(r.stream);
        corpus.predicted.push_back(r.predicted_roi);
        for (int y = 0; y < img.height() && ok; ++y)
            for (int x = 0; x < img.width(); ++x)
                if (r.predicted_roi.get(x, y) && decoded.at(x, y) != img.at(x, y)) {
                    ok = false;
                    why = "pixel mismatch in image " + corpus.items[i].id;
                    break;
                }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= 30.0) {
        ok = false;
        why = "runtime exceeded 30 s";
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%s; 20 images in %.1f s", why.c_str(), secs);
    report(1, ok, "diagnostic losslessness on predicted-ROI pixels", detail);
}

void criterion2_size_reduction(const SweepResult& master) {
    bool ok = true;
    std::string detail;
    for (int gamma0 : {8, 16, 25}) {
        double cr_sum = 0;
        int n = 0, smaller = 0;
        for (const SweepRow& row : master.rows) {
            if (!row.edges_enabled || row.gamma0 != gamma0) continue;
            cr_sum += row.cr;
            ++n;
            if (row.n_b < row.n_o) ++smaller;
        }
        const double cr_mean = cr_sum / n;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "g0=%d cr=%.3f nb<no:%d/%d ", gamma0, cr_mean,
                      smaller, n);
        detail += buf;
        if (!(cr_mean > 1.0) || smaller < 18) ok = false;
    }
    report(2, ok, "corpus-mean CR > 1 and n_b < n_o on >= 18/20", detail);
}

void criterion3_tradeoff_shape(const SweepResult& master) {
    const TradeoffCurve& curve = master.variants[0].curve;  // edges on
    std::vector<double> g, cr, ps;
    for (int gamma0 : {1, 4, 8, 16, 32, 64}) {
        const CurvePoint* p = curve_at(curve, gamma0);
        if (!p) {
            report(3, false, "tradeoff shape", "missing finite point at some gamma0");
            return;
        }
        g.push_back(gamma0);
        cr.push_back(p->cr);
        ps.push_back(p->psnr);
    }
    const double rho_cr = spearman(g, cr);
    const double rho_ps = spearman(g, ps);
    char detail[96];
    std::snprintf(detail, sizeof(detail), "rho(CR)=%.3f (<= -0.9), rho(PSNR)=%.3f (>= 0.8)",
                  rho_cr, rho_ps);
    report(3, rho_cr <= -0.9 && rho_ps >= 0.8,
           "CR falls and PSNR rises monotonically in gamma0", detail);
}

void criterion4_edge_gain(const SweepResult& master) {
    const TradeoffCurve& on = master.variants[0].curve;
    const TradeoffCurve& off = master.variants[1].curve;
    int pairs = 0;
    int good = 0;
    std::string worst;
    for (const CurvePoint& a : on.points)
        for (const CurvePoint& b : off.points) {
            if (std::abs(a.cr - b.cr) > 0.02 * b.cr) continue;
            ++pairs;
            if (a.psnr >= b.psnr) {
                ++good;
            } else if (worst.empty()) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "on(g0=%d)=%.2fdB < off(g0=%d)=%.2fdB; ",
                              a.gamma0, a.psnr, b.gamma0, b.psnr);
                worst = buf;
            }
        }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%s%d/%d CR-matched pairs favor edges",
                  worst.c_str(), good, pairs);
    report(4, pairs > 0 && good == pairs,
           "edge-aware budgets win at matched compression ratios", detail);
}

void criterion5_plateau(const SweepResult& master) {
    const int best = master.variants[0].recommended_gamma0;
    char detail[64];
    std::snprintf(detail, sizeof(detail), "argmax gamma0 = %d, expected in [8,25]", best);
    report(5, best >= 8 && best <= 25, "combined-objective plateau", detail);
}

void criterion6_jpegls_conformance() {
    std::mt19937 rng(20260810);
    bool ok = true;
    std::string why = "round trips, fixtures and reference decodes all exact";
    for (int trial = 0; trial < 200 && ok; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 128);
        const int h = 1 + static_cast<int>(rng() % 128);
        GrayImage img(w, h);
        for (auto& s : img.samples()) s = static_cast<std::uint8_t>(rng());
        if (jpegls_decode(jpegls_encode(img)) != img) {
            ok = false;
            why = "round trip mismatch";
        }
    }
    int fixtures = 0;
    const char* names[] = {"grad16", "const64",  "step32",  "noise48x40",
                           "one",    "runs64x48", "blob128", "extremes33x17"};
    for (const char* name : names) {
        const GrayImage img = load_pgm(kDataDir / (std::string(name) + ".pgm"));
        const auto reference = read_file(kDataDir / (std::string(name) + ".jls"));
        if (jpegls_encode(img) != reference) {
            ok = false;
            why = std::string("encoder bytes differ from reference on ") + name;
            break;
        }
        if (jpegls_decode(reference) != img) {
            ok = false;
            why = std::string("reference stream decode differs on ") + name;
            break;
        }
        ++fixtures;
    }
    if (ok && fixtures < 5) {
        ok = false;
        why = "fewer than 5 reference fixtures";
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%s; 200 round trips, %d fixtures",
                  why.c_str(), fixtures);
    report(6, ok, "JPEG-LS conformance", detail);
}

void criterion7_dct_numerics() {
    std::mt19937 rng(412);
    double worst_rt = 0.0;
    double worst_parseval = 0.0;
    for (int size : {8, 4}) {
        for (int trial = 0; trial < 1000; ++trial) {
            PixelBlock b{size, {}};
            for (int i = 0; i < size * size; ++i)
                b.samples[i] = static_cast<std::uint8_t>(rng());
            const CoefficientBlock c = forward_dct(b);
            const auto back = inverse_dct_real(c);
            double es = 0, ec = 0;
            for (int i = 0; i < size * size; ++i) {
                worst_rt = std::max(worst_rt, std::abs(back[i] - b.samples[i]));
                es += static_cast<double>(b.samples[i]) * b.samples[i];
                ec += c.coeffs[i] * c.coeffs[i];
            }
            worst_parseval = std::max(worst_parseval, std::abs(es - ec) / es);
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max round-trip err %.2e, max Parseval rel err %.2e",
                  worst_rt, worst_parseval);
    report(7, worst_rt < 1e-9 && worst_parseval < 1e-9,
           "DCT round-trip and Parseval within 1e-9", detail);
}

void criterion8_metric_formulas() {
    const auto psnr = roi_psnr(1.0, 255);
    const bool psnr_ok = psnr && std::abs(*psnr - 48.1308) <= 0.0001;

    GrayImage a(4, 4, 100), b(4, 4, 100);
    RoiMask m(4, 4);
    m.set(0, 0, true);
    m.set(3, 2, true);
    b.at(0, 0) = 103;
    b.at(3, 2) = 96;
    const bool mse_ok = roi_mse(a, b, m) == 12.5;

    char detail[96];
    std::snprintf(detail, sizeof(detail), "psnr(1,255)=%.6f dB, two-pixel mse %s 12.5",
                  psnr ? *psnr : -1.0, mse_ok ? "==" : "!=");
    report(8, psnr_ok && mse_ok, "metric closed forms", detail);
}

void criterion9_determinism(const Corpus& corpus) {
    SweepOptions opt;
    opt.gamma0_values = {8, 25};
    opt.workers = 1;
    const std::string csv1 = to_csv(sweep(corpus.items, opt));
    opt.workers = 8;
    const std::string csv8 = to_csv(sweep(corpus.items, opt));
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%zu CSV bytes", csv1.size());
    report(9, csv1 == csv8, "sweep CSV byte-identical for workers 1 and 8", detail);
}

void criterion10_throughput(const Corpus& corpus) {
    // warmed up by earlier criteria; time a single default compress
    const auto t0 = Clock::now();
    const PipelineResult r = compress(corpus.samples[0].image, corpus.samples[0].prob, {});
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    char detail[64];
    std::snprintf(detail, sizeof(detail), "512x512 compress in %.3f s (stream %zu B)",
                  secs, r.stream.size());
    report(10, secs < 1.0, "single-image throughput under 1 s", detail);
}

}  // namespace

int main() {
    std::printf("building 20-image synthetic corpus (512x512, seeds 0..19)...\n");
    Corpus corpus = build_corpus();

    criterion1_lossless(corpus);

    std::printf("running master sweep (11 gamma0 values, edges on/off, 8 workers)...\n");
    SweepOptions master_opt;
    master_opt.gamma0_values = {1, 2, 4, 8, 12, 16, 20, 25, 32, 48, 64};
    master_opt.edge_variants = {true, false};
    master_opt.workers = 8;
    const SweepResult master = sweep(corpus.items, master_opt);

    criterion2_size_reduction(master);
    criterion3_tradeoff_shape(master);
    criterion4_edge_gain(master);
    criterion5_plateau(master);
    criterion6_jpegls_conformance();
    criterion7_dct_numerics();
    criterion8_metric_formulas();
    criterion9_determinism(corpus);
    criterion10_throughput(corpus);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
